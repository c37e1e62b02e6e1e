"""tdcat: a finite-scale workbench for totally distributive categories.

Modules: ``core`` (categories, posets, profunctors), ``order`` (ccd,
continuity, Scott opens, adjoint solving), ``presheaf`` (presheaves, coends,
flatness), ``kan`` (Kan extensions and adjoint triples), ``ideals``
(idempotent arrow ideals), ``wavy`` (wavy-arrow comonads) and ``cli``.
"""

__version__ = "0.1.0"
