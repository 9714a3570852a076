"""Shared helpers for building matrices and vectors in tests."""

from triadlab.gradedmatrix import GradedMatrix
from triadlab.poly import parse_poly
from triadlab.scalars import QQ


def gm(tgt_twists, src_twists, rows_text, field=QQ):
    rows = [[parse_poly(e, field) for e in row] for row in rows_text]
    return GradedMatrix(tgt_twists, src_twists, rows, field)


def ideal_vectors(texts, field=QQ):
    """Polynomials as vectors in the rank-one free module."""
    return [{0: parse_poly(t, field)} for t in texts]


def col(entries, field=QQ):
    """Sparse column vector from {index: text}."""
    return {i: parse_poly(t, field) for i, t in entries.items()}
