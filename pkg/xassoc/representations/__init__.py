from .augmentation import (
    augment_training_set,
    derive_user_repr_from_videos,
    platform_mean,
    stack_examples,
)
from .filtering import filter_dataset
from .loaders import (
    load_dataset,
    load_dataset_dir,
    load_synthetic_config,
    make_topic_vector,
    save_dataset,
)
from .splitting import split_train_test
from .synthetic import default_granularity_map, gen_synthetic, granularity_matrix
from .types import (
    AlignedUser,
    AugmentedExample,
    Dataset,
    InteractionSet,
    SyntheticConfig,
    TopicVector,
    VideoRecord,
)
