"""Presentations of subshifts by labelled graphs."""

from .block_codes import (
    BlockMap,
    ConjugacyPair,
    TransportError,
    TransportResult,
    apply_to_presentation,
    apply_to_word,
    fischer_transport_check,
    higher_block_code,
    identity_pair,
    lemma3_transport,
    lemma4_transport,
    lemma6_transport,
)
from .context import BACKWARD, FORWARD, ContextSet
from .covers import (
    Cover,
    CoverError,
    GrowthTable,
    determinize,
    exact_cover,
    fischer_cover,
    higher_block_presentation,
    krieger_cover,
    standard_growth,
)
from .shannon import (
    LabelledGraph,
    ShannonGraph,
    forward_context,
    forward_separate,
    graphs_isomorphic,
    is_irreducible,
    is_right_resolving,
    separating_word,
    separation_partition,
    transition,
    trim,
)
from .subshift import (
    Coded,
    FullShift,
    Sft,
    Sofic,
    SubshiftSpec,
    gamma,
    is_admissible,
    language,
    omega,
    omega_circ,
    omega_contains,
)
from .synchronization import (
    SyncReport,
    enumerate_sync_words,
    is_a_synchronizing_word,
    is_s_synchronizing_word,
    is_synchronizing_word,
    lemma5_return_word,
)
from .verdict import Outcome, Verdict
from .words import Alphabet, InputError

__version__ = "0.1.0"
