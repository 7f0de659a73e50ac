"""Finite slices of universal Kripke models for intuitionistic
propositional logic, characteristic formulas, and the embeddings they
support: free algebras into intervals, many variables into two, finite
posets and countable orders into the two-variable algebra, plus the
classical negative translations.

The pieces compose: `formula` and `prover` carry the syntax and the
decision procedures everything else trusts; `universal` builds model
slices; `charform` turns nodes into formulas; the remaining modules
each package one embedding or translation with its verification
hooks.  `selfcheck.run_suites` drives the whole battery.
"""

from .formula import (Formula, var, bot, top, neg, and_, or_, imp, conj,
                      disj, parse, to_str, vars_of, tree_size, dag_size,
                      subst, eval_classical, ParseError)
from .prover import (prove_ipc, prove_ipc_g4, prove_classical, equiv_ipc,
                     disjunction_split, ProverTimeout)
from .kripke import (FiniteModel, force, cone, Countermodel, NoneUpTo,
                     semantic_consequence_search, two_successor_lemma_check,
                     random_model, ModelError, PreconditionError)
from .universal import (Universe, build_slice, slice_from_json, level_count,
                        count_level1_closed_form, InvalidNodeError,
                        PartialSliceError)
from .charform import char_pair, verify_char_slice, CharReport
from .nishimura import (LadderPoint, BOTTOM, TOP_POINT, ladder, classify,
                        point_formula, LadderCapError)
from .interval import (IntervalSpec, build_interval_spec, f_interval,
                       h_interval, g_map, maxS_oracle, audit_disjoint,
                       lift_tautology, gate_tautology)
from .omega import (OmegaSpec, build_omega_spec, f_omega, virtual_force,
                    inject_model, in_derived_model, spec_to_json,
                    VarBoundError)
from .negtrans import godel_gentzen, glivenko, classical_to_ipc2
from .posets import (PosetSpec, SigmaTree, CompleteSet, EmbedResult,
                     default_tree, psi_sigma, permissive, split_permissive,
                     fast_le, embed_poset, embed_lindenbaum, extend_complete,
                     audit_complete, poset_from_json, parse_stream_line,
                     poset_iso_classes, OrderInputError)
from .selfcheck import SUITES, SuiteResult, run_suites

__version__ = "0.1.0"
