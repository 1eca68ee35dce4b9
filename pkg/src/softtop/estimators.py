"""scikit-learn style wrappers.

Spaces and soft sets are not numeric arrays, so these estimators take
:class:`SoftSpace` and :class:`SoftSet` objects directly.  They follow the
usual conventions (constructor stores parameters untouched, ``fit`` returns
``self``, fitted attributes end in ``_``) so they work with ``clone``,
``get_params`` and ``set_params``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .exceptions import IncompatibleUniverseError
from .reflection import Reflection, compute_reflection
from .separation import Axiom, check_axiom
from .soft_core import SoftSet, Universe
from .topology import SoftSpace

__all__ = ["check_space", "check_soft_set", "SoftT0Reflection", "SeparationProfiler"]


def check_space(sp) -> SoftSpace:
    """Return ``sp`` if it is a :class:`SoftSpace`, else raise ``TypeError``."""
    if not isinstance(sp, SoftSpace):
        raise TypeError(f"expected a SoftSpace, got {type(sp).__name__}")
    return sp


def check_soft_set(s, universe: Universe | None = None) -> SoftSet:
    """Return ``s`` if it is a :class:`SoftSet` over ``universe``."""
    if not isinstance(s, SoftSet):
        raise TypeError(f"expected a SoftSet, got {type(s).__name__}")
    if universe is not None and s.universe != universe:
        raise IncompatibleUniverseError("soft set lives over a different universe")
    return s


def _soft_sets(X, universe: Universe) -> list[SoftSet]:
    if isinstance(X, SoftSet):
        X = [X]
    return [check_soft_set(s, universe) for s in X]


class SoftT0Reflection(TransformerMixin, BaseEstimator):
    """Learn the soft T0 reflection of a space.

    ``fit(space)`` sets ``reflection_``, ``classes_``, ``quotient_`` and
    ``surjection_``.  ``transform`` sends soft sets over the source to their
    images in the quotient; ``inverse_transform`` pulls soft sets over the
    quotient back.

    Parameters
    ----------
    force : bool, default=False
        Build the quotient even when the space is not soft T0U.
    """

    def __init__(self, force: bool = False):
        self.force = force

    def fit(self, X, y=None):
        sp = check_space(X)
        self.reflection_: Reflection = compute_reflection(sp, force=self.force)
        self.classes_ = self.reflection_.classes
        self.quotient_ = self.reflection_.quotient
        self.surjection_ = self.reflection_.surjection
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "reflection_"):
            raise NotFittedError("SoftT0Reflection is not fitted yet; call fit first")

    def transform(self, X) -> list[SoftSet]:
        self._check_fitted()
        g = self.surjection_
        return [SoftSet(g.target, g.image_bits(s.bits)) for s in _soft_sets(X, g.source)]

    def inverse_transform(self, X) -> list[SoftSet]:
        self._check_fitted()
        g = self.surjection_
        return [SoftSet(g.source, g.preimage_bits(s.bits)) for s in _soft_sets(X, g.target)]

    def fit_transform(self, X, y=None, **fit_params):
        """Fit on a space and return the quotient's open soft sets."""
        return self.fit(X).quotient_.opens


class SeparationProfiler(TransformerMixin, BaseEstimator):
    """Turn a sequence of spaces into a boolean matrix of axiom values.

    Parameters
    ----------
    axioms : sequence of str or None, default=None
        Axioms to decide, in column order; ``None`` means all of them.
    """

    def __init__(self, axioms: Sequence[str] | None = None):
        self.axioms = axioms

    def fit(self, X=None, y=None):
        names = list(Axiom) if self.axioms is None else self.axioms
        self.axioms_ = tuple(Axiom.parse(a) for a in names)
        self.n_features_out_ = len(self.axioms_)
        return self

    def transform(self, X: Iterable[SoftSpace]) -> np.ndarray:
        if not hasattr(self, "axioms_"):
            raise NotFittedError("SeparationProfiler is not fitted yet; call fit first")
        if isinstance(X, SoftSpace):
            X = [X]
        rows = [[check_axiom(check_space(sp), ax) for ax in self.axioms_] for sp in X]
        return np.array(rows, dtype=bool).reshape(len(rows), self.n_features_out_)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        if not hasattr(self, "axioms_"):
            raise NotFittedError("SeparationProfiler is not fitted yet; call fit first")
        return np.array([ax.value for ax in self.axioms_], dtype=object)
