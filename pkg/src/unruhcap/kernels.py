"""Hot-kernel dispatch: compiled extension when built, numpy fallback otherwise.

``BACKEND`` reports which implementation is active.  Both backends share the
clamp rule (probabilities <= 1e-15 contribute nothing) and agree to float
summation order; ``benchmarks/bench_kernels.py`` measures the difference.
"""

try:
    from unruhcap import _fast as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built; see setup.py
    from unruhcap import _kernels_py as _impl

    BACKEND = "python"

PROB_FLOOR = 1e-15

spectrum_entropy_terms = _impl.spectrum_entropy_terms
block_family_entropy = _impl.block_family_entropy

__all__ = ["BACKEND", "PROB_FLOOR", "spectrum_entropy_terms", "block_family_entropy"]
