"""Workbench for a four-mode logic of proofs and refutations: parse,
type-check, normalize, and classify proof terms; translate them into
System F with recursive type constraints; evaluate and search finite
Kripke models; and compile classical natural-deduction proofs into
terms whose computational behaviour can be observed."""

from .syntax import (And, MProp, Mode, Neg, Or, PVar, PureProp, Term, dual,
                     fv, measure, opposite, substitute, truncate)
from .surface import parse_mprop, parse_term, print_mprop, print_term
from .typecheck import (Context, Derivation, check_type, infer_type, mk_abs_general,
                        mk_contrapose, mk_lem, project_derivation)
from .rewrite import ETA, PLAIN, classify, normalize, step
from .systemf import (check_simulation, f_infer, f_normalize, f_step,
                      ftype_equiv, polarity, translate_prop, translate_term)
from .kripke import (KripkeModel, countermodel_search, entails_in_model,
                     enumerate_models, forces, validate_model)
from .classical import classem, decide_oplus, embed_nk, run_classical_rule, tt_valid

__all__ = [name for name in dir() if not name.startswith("_")]
