from .autoencoder import (
    MaskedAutoencoder,
    MultimodalAutoencoder,
    ae_decode,
    ae_forward,
    ae_grad,
    ae_loss,
    ae_predict_cross,
    ae_train,
    build_mask,
    init_autoencoder,
    zero_autoencoder,
)
from .base import AssociationModel
from .checkpoint import dumps_checkpoint, load_checkpoint, read_checkpoint, save_checkpoint
from .factory import fit_model, user_columns
from .latent_attribute import LatentAttribute, la_fit, la_objective, la_predict, sparse_code
from .mlp import MlpMapper, init_mlp, mlp_fit, mlp_grad, mlp_loss, mlp_predict
from .ridge import RidgeTransfer, ridge_fit, ridge_predict
from .types import (
    MODEL_KINDS,
    AutoencoderLayout,
    CheckpointDocument,
    ModelKind,
    ModelSpec,
    TrainConfig,
    default_model_spec,
)
