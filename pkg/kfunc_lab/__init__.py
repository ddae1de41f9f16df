from .alloc import Cell
from .alloc import SimpleVectorFunction
from .alloc import grid_alloc_oracle
from .alloc import truncated_K
from .alloc import vector_K_profile
from .embed import eq10_check
from .embed import eq11_norm
from .embed import eq13_distribution_check
from .embed import lp_norm
from .embed import psi_star
from .embed import remark7_sandwich
from .embed import sp_distribution_check
from .embed import sp_norm_numeric
from .embed import sp_weak_norm
from .embed import tp_norm_exact
from .embed import tp_norm_numeric
from .embed import tp_weak_norm
from .errors import DivergentNormError
from .errors import DomainError
from .errors import InstanceError
from .errors import InstanceFormatError
from .errors import InstanceValidationError
from .errors import KFuncLabError
from .errors import OracleSizeError
from .errors import QuadratureError
from .errors import VerificationError
from .instance import Instance
from .instance import dump_instance
from .instance import load_instance
from .instance import parse_instance
from .kfunc import KProfile
from .kfunc import WeightedScalarCouple
from .kfunc import eval_K
from .kfunc import l1_linf_profile
from .kfunc import scalar_couple_profile
from .kfunc import x_star_star
from .lorentz import LorentzParams
from .lorentz import hardy_sandwich
from .lorentz import interp_norm
from .lorentz import lorentz_pq
from .lorentz import lorentz_pq_starstar
from .oracle import ScalarInstance
from .oracle import direct_K
from .oracle import subset_sup_oracle
from .oracle import theorem1_check
from .stepfn import StepFunction
from .stepfn import ValueMassList
from .stepfn import merge_rearranged
from .stepfn import rearrange
from .verify import SuiteReport
from .verify import Verifier

__all__ = [
    "Cell",
    "DivergentNormError",
    "DomainError",
    "Instance",
    "InstanceError",
    "InstanceFormatError",
    "InstanceValidationError",
    "KFuncLabError",
    "KProfile",
    "LorentzParams",
    "OracleSizeError",
    "QuadratureError",
    "ScalarInstance",
    "SimpleVectorFunction",
    "StepFunction",
    "SuiteReport",
    "ValueMassList",
    "VerificationError",
    "Verifier",
    "WeightedScalarCouple",
    "direct_K",
    "dump_instance",
    "eq10_check",
    "eq11_norm",
    "eq13_distribution_check",
    "eval_K",
    "grid_alloc_oracle",
    "hardy_sandwich",
    "interp_norm",
    "l1_linf_profile",
    "load_instance",
    "lorentz_pq",
    "lorentz_pq_starstar",
    "lp_norm",
    "merge_rearranged",
    "parse_instance",
    "psi_star",
    "rearrange",
    "remark7_sandwich",
    "scalar_couple_profile",
    "sp_distribution_check",
    "sp_norm_numeric",
    "sp_weak_norm",
    "subset_sup_oracle",
    "theorem1_check",
    "tp_norm_exact",
    "tp_norm_numeric",
    "tp_weak_norm",
    "truncated_K",
    "vector_K_profile",
    "x_star_star",
]
