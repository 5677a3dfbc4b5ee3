"""Case-based retrieval with lexicon-driven canonicalization and N-gram matching."""

from .analysis import CorrectionConfig, FactorWeights, correct_word, evaluate_candidate
from .casebase import Case, CaseIndex, build_index, load_index, parse_casebase, save_index
from .lexicons import LexiconBundle, load_lexicon_bundle, shipped_lexicon_dir
from .ngram import best_k_similarity, gram_profile, ngram_score, percentile
from .pipeline import PipelineConfig, preprocess, tokenize
from .retrieval import retrieve, score_case, token_similarity

__version__ = "0.1.0"
