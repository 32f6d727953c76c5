from .candidates import sample_candidates
from .ranking import rank_topk, recommend_users, similarity, write_recommendations
from .types import CandidateSet, RankedList, Recommendation
