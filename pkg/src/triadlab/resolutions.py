"""Minimal graded free resolutions and kernel presentations."""

from .errors import ResourceLimitError
from .gradedmatrix import GradedMatrix, PresentedModule
from .groebner import syzygies
from .minimalize import minimalize

MAX_LENGTH = 6


def free_resolution(m, length=MAX_LENGTH, keep_generators=False, partial=False):
    """Minimal free resolution of a presented module, as [d_1, d_2, ...].

    Every stage is minimalized: no entry is a unit of the localization in
    a degree-zero slot.  Over k[a,X,Y,Z,T] five stages always suffice.
    With keep_generators the target basis of the presentation is frozen
    (the generators keep their meaning; only deeper stages reduce).  With
    partial, stop quietly after `length` stages even if syzygies remain.
    """
    pres = m.presentation
    if pres.ncols == 0:
        return [pres] if pres.nrows else []
    maps = [pres]
    maps = minimalize(maps, active=[] if keep_generators else [0])
    while len(maps) < length:
        last = maps[-1]
        if last.ncols == 0:
            maps.pop()
            break
        syz = syzygies(last)
        if syz.ncols == 0:
            break
        maps.append(syz)
        maps = minimalize(maps, active=[len(maps) - 1])
    else:
        if not partial and maps and maps[-1].ncols and syzygies(maps[-1]).ncols:
            raise ResourceLimitError("resolution did not terminate within length")
    return maps


def kernel_presentation(matrix):
    """Kernel of a graded matrix: (generators into the source, relations).

    The generator columns span ker(matrix) minimally; the relation matrix
    presents the kernel module minimally.  The ambient source of `matrix`
    is never rebased.
    """
    gens = syzygies(matrix)
    if gens.ncols == 0:
        empty = GradedMatrix(gens.src_twists, [], [], matrix.field)
        return gens, empty
    rels = syzygies(gens)
    gens, rels = minimalize([gens, rels], active=[1])
    return gens, rels


def kernel_module(matrix):
    """The kernel as an abstract presented module."""
    gens, rels = kernel_presentation(matrix)
    return PresentedModule(rels), gens


def minimal_presentation(m):
    """Equivalent presentation with no unit entries."""
    (pres,) = minimalize([m.presentation], active=[0])
    return PresentedModule(pres)
