from cutlab.separation.gomory import generate_gomory
from cutlab.separation.loop import run_separation
from cutlab.separation.selection import cosine, filter_density, score_all, select_cuts

__all__ = ["cosine", "filter_density", "generate_gomory", "run_separation", "score_all", "select_cuts"]
