"""Algorithmic layer of a long-form speech pipeline.

Timeline set algebra, VAD hysteresis segmentation, word-timestamp transfer,
boundary-respecting chunking, diarization post-processing, and WER/DER
scoring, all on an exact millisecond clock. Times cross this API as seconds.
"""

from chronoalign._core import (
    Chunk,
    ChronoalignError,
    DerBreakdown,
    TimeMap,
    WerBreakdown,
    adaptive_merge,
    agglomerative_cluster,
    apply_blacklist,
    collapse_repetitions,
    corpus_stats,
    default_config,
    der,
    diff_match,
    exclusive_assign,
    fill_intra_speaker_gaps,
    filter_chunks,
    globalize,
    greedy_partition,
    hysteresis_segment,
    intersect_with_vad,
    merge_windows,
    nfc,
    normalize_tokens,
    optimal_speaker_mapping,
    purge_transients,
    read_rttm,
    simulate,
    timeline_duration,
    timeline_intersect,
    timeline_subtract,
    timeline_union,
    transfer_anchors,
    wer,
    write_rttm,
)
from chronoalign._core import __version__

__all__ = [
    "Chunk",
    "ChronoalignError",
    "DerBreakdown",
    "TimeMap",
    "WerBreakdown",
    "adaptive_merge",
    "agglomerative_cluster",
    "apply_blacklist",
    "collapse_repetitions",
    "corpus_stats",
    "default_config",
    "der",
    "diff_match",
    "exclusive_assign",
    "fill_intra_speaker_gaps",
    "filter_chunks",
    "globalize",
    "greedy_partition",
    "hysteresis_segment",
    "intersect_with_vad",
    "merge_windows",
    "nfc",
    "normalize_tokens",
    "optimal_speaker_mapping",
    "purge_transients",
    "read_rttm",
    "simulate",
    "timeline_duration",
    "timeline_intersect",
    "timeline_subtract",
    "timeline_union",
    "transfer_anchors",
    "wer",
    "write_rttm",
    "__version__",
]
