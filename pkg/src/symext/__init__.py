"""Symbolic workbench for symmetric extensions built from Cohen reals and choice trees."""
from ._kernels import BACKEND
from .forcing import (Eq, Mem, SubsetOfCheck, eval_name, forces, forcing_theorem_check,
                      generic_filters, normalize_name, restriction_decides_check,
                      symmetry_lemma_check)
from .group import (Automorphism, FiniteSymmetricSystem, SupportSpec, WreathPerm, block_swap,
                    conjugate_support, in_fix, is_homogeneous, is_strongly_homogeneous,
                    normality_check, wreath_act_condition, wreath_apply_index, wreath_compose,
                    wreath_inverse)
from .homogeneity import (InconsistentSigma, LemmaInstance, NoSuitableLevel, PermWitnessReport,
                          brute_force_lemma_perm, build_lemma_perm, enumeration_refutation,
                          separate_condition, verify_lemma_perm)
from .names import (AN, AVEC, CALSEQ, A, B, Bounds, CALB, Check, Ext, Name, Sym, TS, X, act_name,
                    bullet, expand_symbolic, is_hs, support_check)
from .perm import FinPerm
from .poset import (TOP, CohenCondition, FinitePoset, Incompatible, cohen_compatible, cohen_leq,
                    cohen_meet, dense_below, is_dense, poset_validate)
from .qforcing import (HPerm, QCondition, canonical_qname, captures, compatible_on, g_act_q,
                       h_act, m_injective, q_compatible, q_leq, q_meet, q_restrict, q_validate)

__version__ = "0.1.0"
