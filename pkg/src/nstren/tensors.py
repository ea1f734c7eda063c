"""Index symmetries, tensor fields of expressions, and constant-coefficient differential operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .algebra import Scalar
from .errors import MixedKeys, SymmetryInconsistent
from .linalg import bareiss_rank
from .poly4 import METRIC, graded_lex_key
from .powerlog import Expr, differentiate

Perm = Tuple[int, ...]
Index = Tuple[int, ...]


def swap(rank: int, *pairs: Tuple[int, int]) -> Perm:
    """Permutation of slot positions exchanging each given pair."""
    p = list(range(rank))
    for a, b in pairs:
        p[a], p[b] = p[b], p[a]
    return tuple(p)


class TensorSignature:
    """Slot count plus signed slot permutations generating the symmetry group.

    A permutation ``perm`` sends the index tuple ``I`` to ``I[perm[0]], I[perm[1]], ...``.
    Signatures built with :meth:`product` canonicalize factor by factor.
    """

    def __init__(self, rank: int, generators: Sequence[Tuple[Perm, int]] = (),
                 factors: Optional[Sequence["TensorSignature"]] = None):
        self.rank = rank
        self.generators = tuple((tuple(p), int(s)) for p, s in generators)
        self.factors = tuple(factors) if factors else None
        self._cache: Dict[Index, Tuple[Index, int]] = {}
        self.group = self._close() if self.factors is None else None

    @classmethod
    def product(cls, *sigs: "TensorSignature") -> "TensorSignature":
        gens = []
        offset = 0
        total = sum(s.rank for s in sigs)
        for s in sigs:
            for p, sign in s.generators:
                full = list(range(total))
                for i, v in enumerate(p):
                    full[offset + i] = offset + v
                gens.append((tuple(full), sign))
            offset += s.rank
        return cls(total, gens, factors=sigs)

    def _close(self) -> Dict[Perm, int]:
        ident = tuple(range(self.rank))
        group = {ident: 1}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for gp, gs in self.generators:
                    q = tuple(p[i] for i in gp)
                    s = group[p] * gs
                    if q in group:
                        if group[q] != s:
                            raise SymmetryInconsistent(f"permutation {q} carries both signs")
                        continue
                    group[q] = s
                    nxt.append(q)
            frontier = nxt
        return group

    def canonicalize(self, idx: Sequence[int]) -> Tuple[Index, int]:
        """Lexicographically least tuple in the orbit and the sign relating them.

        A sign of 0 means the component vanishes identically.
        """
        idx = tuple(idx)
        hit = self._cache.get(idx)
        if hit is not None:
            return hit
        if self.factors is not None:
            out, sign, pos = [], 1, 0
            for f in self.factors:
                c, s = f.canonicalize(idx[pos:pos + f.rank])
                out.extend(c)
                sign *= s
                pos += f.rank
            res = (tuple(out), sign)
        else:
            images: Dict[Index, int] = {}
            zero = False
            for p, s in self.group.items():
                img = tuple(idx[i] for i in p)
                if img in images and images[img] != s:
                    zero = True
                images.setdefault(img, s)
            best = min(images)
            res = (best, 0 if zero else images[best])
        self._cache[idx] = res
        return res

    def canonical_tuples(self) -> List[Index]:
        if self.factors is not None:
            parts = [f.canonical_tuples() for f in self.factors]
            return [tuple(x for part in combo for x in part) for combo in product(*parts)]
        out = []
        for idx in product(range(4), repeat=self.rank):
            c, s = self.canonicalize(idx)
            if c == idx and s != 0:
                out.append(idx)
        return out

    def all_generators(self) -> Iterator[Tuple[Perm, int]]:
        return iter(self.generators)


def antisymmetric_pair() -> TensorSignature:
    """``F_{mu nu} = -F_{nu mu}``."""
    return TensorSignature(2, [(swap(2, (0, 1)), -1)])


def field_strength_pair() -> TensorSignature:
    """Two antisymmetric pairs, symmetric under pair exchange (Maxwell two-point symmetry)."""
    return TensorSignature(4, [(swap(4, (0, 1)), -1), (swap(4, (2, 3)), -1),
                               (swap(4, (0, 2), (1, 3)), 1)])


def riemann_signature() -> TensorSignature:
    """``R_{abkt} = -R_{bakt} = -R_{abtk} = R_{ktab}``."""
    return field_strength_pair()


@dataclass
class TensorField:
    """Expression-valued tensor: components stored on canonical index tuples only."""

    signature: TensorSignature
    components: Dict[Index, Expr]
    prefactor: Scalar = field(default_factory=lambda: Scalar(1))
    name: str = ""

    def component(self, idx: Sequence[int]) -> Expr:
        c, s = self.signature.canonicalize(idx)
        if s == 0:
            return Expr()
        val = self.components.get(c, Expr())
        return val if s == 1 else val * -1

    def nonzero(self) -> Dict[Index, Expr]:
        return {k: v for k, v in self.components.items() if v}

    def polynomials(self):
        """Polynomial parts of the nonzero components, with their shared (power, log) key.

        Raises MixedKeys when components are not all single terms with one key.
        """
        key = None
        polys = []
        for idx, e in sorted(self.nonzero().items()):
            terms = e.terms
            if len(terms) != 1:
                raise MixedKeys(f"component {idx} has {len(terms)} power-log terms")
            t = terms[0]
            k = (t.pow, t.logpow, t.scalar.unit, t.acoeff)
            if key is None:
                key = k
            elif k != key:
                raise MixedKeys(f"component {idx} has key {k}, expected {key}")
            polys.append(t.poly)
        return key, polys

    def check_symmetry(self, direct: Callable[[Index], Expr],
                       tuples: Optional[Iterable[Index]] = None) -> bool:
        """Compare stored values against ``direct`` (an independent evaluator) on permuted tuples."""
        tuples = list(tuples) if tuples is not None else list(self.components)
        for idx in tuples:
            base = direct(idx)
            for perm, sign in self.signature.all_generators():
                img = tuple(idx[i] for i in perm)
                if direct(img) != base * sign:
                    return False
                if self.component(img) != base * sign:
                    return False
        return True


def span_rank(tf: TensorField) -> int:
    """Exact rank of the span of the component polynomials."""
    _, polys = tf.polynomials()
    if not polys:
        return 0
    basis = sorted({e for p in polys for e in p.terms}, key=graded_lex_key)
    return bareiss_rank([p.coefficient_vector(basis) for p in polys])


# constant-coefficient differential operators ------------------------------------

DKey = Tuple[Tuple[int, int, int, int], int, int, int]  # (derivative exps, mass power, ipow, pipow)


class DerivPoly:
    """Polynomial in commuting ``d_0..d_3`` (lower indices) with Scalar coefficients and powers of m."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Dict[DKey, Fraction] | Iterable[Tuple[DKey, Fraction]] = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: Dict[DKey, Fraction] = {}
        for k, c in items:
            acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
        self._terms = {k: c for k, c in acc.items() if c != 0}

    @classmethod
    def d(cls, *mus: int, scalar: Scalar = Scalar(1), mpow: int = 0) -> "DerivPoly":
        e = [0, 0, 0, 0]
        for mu in mus:
            e[mu] += 1
        return cls({(tuple(e), mpow, scalar.ipow, scalar.pipow): scalar.q})

    @classmethod
    def one(cls) -> "DerivPoly":
        return cls.d()

    @property
    def terms(self) -> Dict[Tuple[Tuple[int, ...], int], Scalar]:
        """``{(exps, mpow): Scalar}``; raises if one slot mixes scalar classes."""
        out: Dict[Tuple[Tuple[int, ...], int], Scalar] = {}
        for (e, m, i, p), c in self._terms.items():
            key = (e, m)
            out[key] = out[key] + Scalar(c, i, p) if key in out else Scalar(c, i, p)
        return out

    def sector(self, mpow: int) -> "DerivPoly":
        return DerivPoly({k: c for k, c in self._terms.items() if k[1] == mpow})

    @property
    def mass_powers(self) -> List[int]:
        return sorted({k[1] for k in self._terms})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, DerivPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "DerivPoly") -> "DerivPoly":
        return DerivPoly(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "DerivPoly":
        return self * -1

    def __sub__(self, other: "DerivPoly") -> "DerivPoly":
        return self + (-other)

    def __mul__(self, other) -> "DerivPoly":
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if isinstance(other, Scalar):
            out = []
            for (e, m, i, p), c in self._terms.items():
                s = Scalar(c, i, p) * other
                out.append(((e, m, s.ipow, s.pipow), s.q))
            return DerivPoly(out)
        if isinstance(other, DerivPoly):
            out = []
            for (e1, m1, i1, p1), c1 in self._terms.items():
                for (e2, m2, i2, p2), c2 in other._terms.items():
                    s = Scalar(c1 * c2, i1 + i2, p1 + p2)
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out.append(((e, m1 + m2, s.ipow, s.pipow), s.q))
            return DerivPoly(out)
        return NotImplemented

    __rmul__ = __mul__

    def apply(self, kernel: Expr, cache: Optional[dict] = None) -> Expr:
        """Apply to an off-origin kernel.  Only the mass-free sector can act on an Expr."""
        acc = Expr()
        for (e, m, i, p), c in self._terms.items():
            if m != 0:
                raise ValueError("operator has mass-dependent terms; apply a single sector")
            acc = acc + derivative(kernel, e, cache) * Scalar(c, i, p)
        return acc

    def __repr__(self) -> str:
        parts = []
        for (e, m, i, p), c in sorted(self._terms.items()):
            d = "".join(f"d{mu}" * k for mu, k in enumerate(e)) or "1"
            mass = f"*m^{m}" if m else ""
            parts.append(f"{Scalar(c, i, p)}*{d}{mass}")
        return "DerivPoly(" + " + ".join(parts) + ")"


def derivative(kernel: Expr, exps: Sequence[int], cache: Optional[dict] = None) -> Expr:
    """``d_0^e0 d_1^e1 d_2^e2 d_3^e3`` applied to ``kernel`` (lower indices)."""
    exps = tuple(exps)
    key = (kernel, exps)
    if cache is not None and key in cache:
        return cache[key]
    if sum(exps) == 0:
        out = kernel
    else:
        mu = next(i for i, k in enumerate(exps) if k)
        rest = list(exps)
        rest[mu] -= 1
        out = differentiate(derivative(kernel, rest, cache), mu, "lower")
    if cache is not None:
        cache[key] = out
    return out


def metric(mu: int, nu: int) -> int:
    return METRIC[mu] if mu == nu else 0


def apply_derivative_tensor(op: Callable[[Index], DerivPoly], signature: TensorSignature,
                            kernel: Expr, prefactor: Scalar = Scalar(1), name: str = "") -> TensorField:
    """Tensor field whose canonical components are ``op(idx)`` applied to ``kernel``."""
    cache: dict = {}
    comps = {}
    for idx in signature.canonical_tuples():
        val = op(idx).apply(kernel, cache)
        if val:
            comps[idx] = val
    return TensorField(signature, comps, prefactor, name)
