"""Common result type for necessary separability criteria."""

from dataclasses import dataclass

POS_TOL = 1e-9


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one necessary criterion.

    margins hold the raw signed slack of every inequality the criterion
    bundles (positive = satisfied); holds is min(margins) >= -1e-9.
    """
    id: str
    holds: bool
    margins: tuple

    def asdict(self):
        return {"id": self.id, "holds": self.holds, "margins": list(self.margins)}


def make_verdict(cid, margins):
    m = tuple(float(x) for x in margins)
    if not m:
        raise ValueError("criterion %r produced no margins" % (cid,))
    return CriterionVerdict(cid, bool(min(m) >= -POS_TOL), m)
