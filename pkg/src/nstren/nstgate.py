"""Homogeneous-extension verdicts for terms ``H_k(x) / (x^2)^s``.

A term has a homogeneous extension to the origin, unique under Lorentz
covariance, iff its harmonic degree ``k`` exceeds its degree of divergence
``D = 2s - k - 4``.  Power counting alone only looks at the sign of ``D``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import List

from .errors import UnsupportedForm
from .harmdec import decompose
from .powerlog import Expr
from .tensors import TensorField


@dataclass(frozen=True)
class TermVerdict:
    k: int
    s: int
    D: int
    naive_degree: int
    homogeneous_extension: bool
    unique_covariant: bool
    total_homogeneity: int

    @property
    def naive_divergent(self) -> bool:
        return self.D >= 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class NSTReport:
    verdicts: List[TermVerdict] = field(default_factory=list)

    @property
    def overall_convergent(self) -> bool:
        return all(v.homogeneous_extension for v in self.verdicts)

    @property
    def naive_divergent(self) -> bool:
        return any(v.D >= 0 for v in self.verdicts)

    @property
    def max_divergence(self) -> int | None:
        return max((v.D for v in self.verdicts), default=None)

    def distinct(self) -> List[TermVerdict]:
        return sorted(set(self.verdicts), key=lambda v: (v.s, v.k))

    def extend(self, other: "NSTReport") -> None:
        self.verdicts.extend(other.verdicts)

    def to_dict(self) -> dict:
        return {
            "convergent": self.overall_convergent,
            "naive_divergent": self.naive_divergent,
            "verdicts": [
                {"k": v.k, "s": v.s, "D": v.D, "naive": "divergent" if v.D >= 0 else "convergent",
                 "nst": "extends" if v.homogeneous_extension else "renormalization required",
                 "unique": v.unique_covariant}
                for v in self.distinct()
            ],
        }

    def table(self) -> str:
        rows = [("k", "s", "D", "naive", "NST", "unique")]
        for v in self.distinct():
            rows.append((str(v.k), str(v.s), str(v.D),
                         "divergent" if v.D >= 0 else "convergent",
                         "extends" if v.homogeneous_extension else "renormalization required",
                         "yes" if v.unique_covariant else "no"))
        widths = [max(len(r[i]) for r in rows) for i in range(6)]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def analyze_term(s: int, k: int) -> TermVerdict:
    D = 2 * s - k - 4
    ok = k > D
    return TermVerdict(k=k, s=s, D=D, naive_degree=D, homogeneous_extension=ok,
                       unique_covariant=ok, total_homogeneity=k - 2 * s)


def analyze_expr(e: Expr) -> NSTReport:
    """One verdict per harmonic piece of every term of ``e``.

    A piece ``(x^2)^j H`` of a term over ``(x^2)^s`` is judged as ``H / (x^2)^(s-j)``.
    """
    report = NSTReport()
    for t in e.terms:
        if t.pow.alpha or t.acoeff.degree > 0:
            raise UnsupportedForm("alpha-symbolic terms cannot be judged")
        if t.logpow:
            raise UnsupportedForm("log-bearing terms are already extensions, not inputs")
        s = -t.pow.n
        if s < 1:
            raise UnsupportedForm(f"term {t} has no pole at the origin")
        for _, part in t.poly.homogeneous_parts().items():
            for j, h in decompose(part).pieces:
                report.verdicts.append(analyze_term(s - j, h.degree))
    return report


def analyze_amplitude(tf: TensorField) -> NSTReport:
    report = NSTReport()
    for e in tf.components.values():
        report.extend(analyze_expr(e))
    return report
