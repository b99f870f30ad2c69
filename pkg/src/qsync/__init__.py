"""qsync: synchronizing automata, their unitary realizations, and the
multi-qubit entanglement a synchronizing word leaves behind in the register.
"""

from .analysis import ame_check, entropy_pump_check, factor_spectators, fidelity, mutual_information_QR, reduced_spectrum
from .automaton import Dfa, DegreeProfile, Word, apply_word, degree_profile, is_balanced, parse_dfa, serialize_dfa, zoo
from .census import census_report, f_qdfa, f_stirling, n_dfa, n_qdfa, sample_fraction
from .qsim import BehaviorClass, MixedEnsemble, SparseState, classify_behavior, init_joint, run, run_mixed, step
from .syncword import SyncReport, cerny_audit, greedy_sync_word, is_synchronizing_word, shortest_sync_word, synchronizes_to_class
from .synth import SynthResult, TargetSpec, suffix_levels, synthesize, verify_synthesis
from .unitarize import JointPerm, exists_permutation_bruteforce, ghz4_perm, unitarize, verify_realizes

__version__ = "0.1.0"
