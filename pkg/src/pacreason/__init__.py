"""Answering logical queries from masked examples: learned clauses plus
width-bounded resolution, direct CNF evaluation, and exact oracles."""

from .deciders import RunConfig, RunReport, cnf_eval, learn_res, uniform_decider
from .distributions import AffineSource, AffineSystem, TopicModel, TopicSource, UniformSource
from .learner import learn_clause_table, narrow_cnf
from .logic import BOTTOM, TOP, Clause, Cnf, PartialAssignment, restrict_clause, restrict_cnf
from .masking import draw_masked_samples, mask_independent
from .resolution import ResolutionProof, check_proof, w_refute

__version__ = "0.1.0"
