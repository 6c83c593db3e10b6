"""Subset algebras generated by minimal forests, their atoms and measure.

The algebra at level k is generated by the tree vertex-sets of all
minimum-weight k-forests.  Because each generating family is a
partition of the vertex set, the atoms are exactly the blocks of the
common refinement of those partitions: two vertices share an atom iff
they share a tree in *every* minimal k-forest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .enumeration import InfeasibleLevel, MinForestSet
from .graph import (Digraph, Forest, InputError, components, in_neighborhood,
                    replace_arcs, restrict, subtree, upsilon)


@dataclass(frozen=True, eq=False)
class AtomFamily:
    """Atoms of the level-k algebra, in canonical order.

    Canonical order is by smallest contained vertex index.  An atom is
    labeled when it contains a root of some minimal k-forest.
    """

    k: int
    atoms: tuple[frozenset[int], ...]
    labeled: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.atoms)

    def atom_of(self, v: int) -> int:
        """Index of the atom containing v."""
        for i, a in enumerate(self.atoms):
            if v in a:
                return i
        raise InputError(f"vertex {v} not covered by the atom family")

    def labeled_atoms(self) -> tuple[frozenset[int], ...]:
        return tuple(a for a, l in zip(self.atoms, self.labeled) if l)

    def unlabeled_atoms(self) -> tuple[frozenset[int], ...]:
        return tuple(a for a, l in zip(self.atoms, self.labeled) if not l)

    def as_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(self.atoms)


def _refine(partition: list[set[int]], blocks) -> list[set[int]]:
    refined: list[set[int]] = []
    for cell in partition:
        for block in blocks:
            piece = cell & block
            if piece:
                refined.append(piece)
    return refined


def atoms(graph: Digraph, k: int, tilde: MinForestSet) -> AtomFamily:
    """Atom family of the algebra generated by the minimal k-forests.

    Common refinement of the component partitions of all forests in
    ``tilde``; labeled flags record the roots across all forests.
    """
    if tilde.k != k:
        raise InputError(f"tie set is for k={tilde.k}, not {k}")
    if not tilde.forests:
        raise InfeasibleLevel(k)
    partition: list[set[int]] = [set(range(graph.n))]
    for F in tilde.forests:
        partition = _refine(partition, components(F))
    cells = sorted((frozenset(c) for c in partition), key=min)
    all_roots: set[int] = set()
    for F in tilde.forests:
        all_roots |= F.roots
    labeled = tuple(bool(cell & all_roots) for cell in cells)
    family = AtomFamily(k, tuple(cells), labeled)
    # atom indivisibility: every tree of every minimal forest meets each
    # atom in nothing or the whole atom
    for F in tilde.forests:
        for tree in components(F):
            for cell in family.atoms:
                meet = cell & tree
                assert not meet or meet == cell, "atom split by a generator tree"
    return family


def algebra_contains(family: AtomFamily, S: frozenset[int]) -> bool:
    """True iff S belongs to the algebra, i.e. is a union of atoms."""
    rest = set(S)
    for a in family.atoms:
        meet = rest & a
        if not meet:
            continue
        if meet != a:
            return False
        rest -= a
    return not rest


def algebra_elements(family: AtomFamily):
    """All unions of atoms (the full algebra; exponential in atom count)."""
    from .graph import powerset
    for combo in powerset(range(len(family.atoms))):
        yield frozenset().union(*(family.atoms[i] for i in combo)) if combo else frozenset()


@dataclass(frozen=True)
class AtomMeasure:
    """Per-atom out-arc weight, when forest-independent.

    ``values[i]`` is the common out-weight of atom i; ``per_forest``
    keeps the raw table so disagreement under equality levels stays
    inspectable.
    """

    k: int
    values: tuple[Fraction, ...]
    well_defined: bool
    per_forest: tuple[tuple[Fraction, ...], ...]


def measure(graph: Digraph, k: int, tilde: MinForestSet,
            family: AtomFamily) -> AtomMeasure:
    """The measure rho on atoms: weight of arcs leaving each atom.

    Well-definedness (all minimal forests agreeing atom by atom) is
    reported, not assumed; when it holds the values sum to phi^k.
    """
    if not tilde.forests:
        raise InfeasibleLevel(k)
    table = tuple(tuple(upsilon(F, a) for a in family.atoms)
                  for F in tilde.forests)
    well = all(row == table[0] for row in table)
    values = table[0]
    if well:
        assert sum(values, Fraction(0)) == tilde.weight
    return AtomMeasure(k, values, well, table)


def component_measure(graph: Digraph, k: int, tilde: MinForestSet,
                      U: frozenset[int]) -> dict[Forest, tuple[Fraction, ...]]:
    """Out-weights of the components of F|_U, per minimal forest F.

    For every component vertex-set X of any F|_U, all minimal forests
    carry the same out-weight on X (asserted).  Once the restriction is
    known to be a tree this collapses to the plain atom measure; kept
    as the verification instrument for the component-level statement.
    """
    if not tilde.forests:
        raise InfeasibleLevel(k)
    result: dict[Forest, tuple[Fraction, ...]] = {}
    for F in tilde.forests:
        comps = restrict(F, U).component_sets()
        weights = tuple(upsilon(F, X) for X in comps)
        for X, w in zip(comps, weights):
            for G in tilde.forests:
                assert upsilon(G, X) == w, \
                    "component out-weight differs between minimal forests"
        result[F] = weights
    return result


class VerificationFailure(AssertionError):
    """A battery statement failed on a concrete scenario (a counterexample)."""

    def __init__(self, statement: str, witness: dict):
        super().__init__(f"counterexample to {statement}")
        self.statement = statement
        self.witness = witness


def find_shielded_forest(tilde: MinForestSet, E: frozenset[int],
                         F: Forest) -> Forest:
    """A minimal forest H with no arcs entering E and F's out-arcs on E.

    Existence is guaranteed at strict levels; found by scanning the
    complete tie set.  Absence is a counterexample, not an exception
    path of normal operation.
    """
    want = tuple(F.out[v] for v in sorted(E))
    for H in tilde.forests:
        if tuple(H.out[v] for v in sorted(E)) != want:
            continue
        if not in_neighborhood(H, E):
            return H
    raise VerificationFailure("P9", {
        "k": tilde.k,
        "set": sorted(E),
        "forest": F.arc_names(),
    })


def detach_incoming(graph: Digraph, k: int, tilde: MinForestSet,
                    F: Forest, U: frozenset[int]) -> tuple[frozenset[int], Forest]:
    """Detach from F everything that reaches the atom U.

    D is the union of the maximal subtrees rooted at the tails of arcs
    entering U in F.  Returns (D, G) where G is a minimal forest that
    agrees with F outside D and has no arcs entering U.
    """
    entries = in_neighborhood(F, U)
    if not entries:
        return frozenset(), F
    subtrees = [subtree(F, b) for b in sorted(entries)]
    D = frozenset().union(*subtrees)
    H = find_shielded_forest(tilde, U, F)
    out = replace_arcs(F, H, D)
    witness = {"k": k, "atom": sorted(U), "D": sorted(D),
               "forest": F.arc_names()}
    try:
        G = Forest(graph, out)
    except InputError:
        raise VerificationFailure("T4", witness) from None
    if G.k != k or G.weight != tilde.weight or in_neighborhood(G, U):
        raise VerificationFailure("T4", witness)
    return D, G


def symmetrize(graph: Digraph) -> Digraph:
    """Undirected view: every arc gets its reverse with the same weight.

    Where both directions already exist with different weights, each
    pair collapses to the minimum (so the result is symmetric).
    """
    arcs = dict(graph.arcs)
    for (i, j), w in graph.arcs.items():
        rev = (j, i)
        if rev not in arcs or w < arcs[rev]:
            arcs[rev] = w
    return Digraph(names=graph.names, arcs=arcs)


def is_symmetric(graph: Digraph) -> bool:
    return all(graph.arcs.get((j, i)) == w for (i, j), w in graph.arcs.items())


def undirected_check(graph: Digraph, k: int, tilde: MinForestSet,
                     family: AtomFamily, strict: bool) -> dict:
    """Undirected specialization: at strict levels all atoms are labeled,
    there are exactly k of them, and they coincide with the tree
    vertex-sets of every minimal forest."""
    if not is_symmetric(graph):
        raise InputError("undirected check needs a symmetric digraph")
    fragment = {"k": k, "strict": strict, "applicable": strict, "ok": True}
    if not strict:
        return fragment
    ok = (len(family) == k and all(family.labeled))
    if ok:
        for F in tilde.forests:
            if frozenset(components(F)) != family.as_sets():
                ok = False
                break
    fragment["ok"] = ok
    if not ok:
        fragment["witness"] = {
            "k": k,
            "atoms": [sorted(a) for a in family.atoms],
            "labeled": list(family.labeled),
        }
    return fragment
