"""Nonevasiveness certification for interiors of complement-deleted lattices.

``certify`` runs the constructive elimination recursion on a lattice and
a chosen interior element, producing a certificate tree whose nodes are
Leaf, Prune and Split.  ``verify_certificate`` checks a certificate
against a complex using nothing but link/deletion, and
``extract_collapses`` compiles a verified certificate into an explicit
elementary-collapse sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import CollapsePair, CollapseSequence, order_complex, replay_collapses
from .errors import (
    ElementOnBoundary,
    EmptyLink,
    InternalAssertion,
    LastVertex,
    NonevadeError,
    ParseError,
    UnknownElement,
    UnknownVertex,
    VerificationFailed,
)

MODES = ("case1_atom", "case1_coatom", "case2_atom", "case2_coatom")


@dataclass(frozen=True)
class Leaf:
    """Single remaining vertex: the recursion's base case."""

    vertex: str


@dataclass(frozen=True)
class Prune:
    """Interior elements discarded wholesale; the child covers the same complex."""

    removed: tuple
    child: object

    def __post_init__(self):
        object.__setattr__(self, "removed", tuple(self.removed))


@dataclass(frozen=True)
class Split:
    """Recursion on the deletion and the link of ``vertex``.

    ``mode`` records which elimination case chose the vertex;
    ``link_element`` is the element the link child certifies (serialised
    under the wire key "z").
    """

    vertex: str
    mode: str
    link_element: str
    dl: object
    lk: object

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"bad split mode {self.mode!r}")


class CertifyTrace:
    """Ordered log of the decisions a certification run took."""

    def __init__(self):
        self.entries = []

    def record(self, **entry):
        self.entries.append(entry)

    def __len__(self):
        return len(self.entries)

    def to_obj(self):
        return list(self.entries)

    def summary(self):
        cases = {}
        max_depth = 0
        for e in self.entries:
            cases[e["case"]] = cases.get(e["case"], 0) + 1
            max_depth = max(max_depth, e["depth"])
        parts = [f"{len(self.entries)} decisions", f"max depth {max_depth}"]
        parts += [f"{k}: {cases[k]}" for k in sorted(cases)]
        return ", ".join(parts)


def interior_members(lattice, element):
    """The certified vertex set: interior elements that do not complement ``element``."""
    if element not in lattice.poset._index:
        raise UnknownElement(f"unknown element {element!r}")
    if element == lattice.bottom or element == lattice.top:
        raise ElementOnBoundary(f"{element!r} is a bound of the lattice")
    co = set(lattice.complements(element))
    return tuple(e for e in lattice.interior() if e not in co)


def certificate_complex(lattice, element):
    """Order complex of the vertex set certify(lattice, element) works on."""
    return order_complex(lattice.interior_set(interior_members(lattice, element)))


def _guarded(tag, build):
    try:
        return build()
    except NonevadeError as exc:
        raise InternalAssertion(tag, str(exc)) from exc


def certify(lattice, element):
    """Certify that the order complex for (lattice, element) is nonevasive.

    Returns (certificate, trace).  The recursion eliminates one vertex or
    one discardable set per step, taking the canonically first candidate
    that passes its soundness checks:

    * case1_atom: an atom y with y not below the element and join(element, y)
      below top.  Recurse on the lattice minus y (deletion side) and on the
      interval [y, top] at join(element, y) (link side).
    * case1_coatom: the order dual of the above.
    * prune: when some atom or coatom complements the element, the
      comparability components touching those complements are discarded;
      the complex is unchanged, the ambient lattice shrinks.  When that
      discard set is unusable, single complements whose removal keeps a
      lattice and preserves the remaining complements are pruned instead.
    * case2_atom / case2_coatom: split on an atom below the element (else
      a coatom above it); covers the no-complements endgame and doubles
      as the fallback when no other step applies.
    * Leaf: the element is the only interior element left.

    A split on a vertex y is only sound when the deletion keeps the
    complement set intact and the link-side complement identity holds
    (complements of the link element inside the interval are exactly the
    surviving complements of the certified element).  When the element is
    noncomplemented both conditions always hold and the first case-1
    candidate passes; when it has complements they can genuinely
    fail for individual candidates, so every candidate is screened
    against them and rejected candidates are recorded in the trace.

    Conditions the theory does promise (screened candidates stay sound
    after the sublattices are built, discard sets avoid the element,
    sublattices revalidate) are still re-checked; a violation raises
    InternalAssertion because it indicates a bug, never bad input.
    """
    trace = CertifyTrace()
    cert = _certify(lattice, element, trace, 0)
    return cert, trace


def _interval_complements(L, lower, upper, e):
    """Complements of e within the interval [lower, upper], via L's tables."""
    out = set()
    for t in L.elements:
        if not (L.leq(lower, t) and L.leq(t, upper)):
            continue
        if L.meet(e, t) == lower and L.join(e, t) == upper:
            out.add(t)
    return out


def _atom_split_sound(L, x, y, co):
    """Screen an atom split: deletion keeps complements, link identity holds."""
    z = L.join(x, y)
    # a new complement would be a t whose meet with x drops from y to bottom
    for t in L.elements:
        if t != y and L.meet(x, t) == y and L.join(x, t) == L.top:
            return False
    return _interval_complements(L, y, L.top, z) == {t for t in co if L.leq(y, t)}


def _coatom_split_sound(L, x, y, co):
    z = L.meet(x, y)
    for t in L.elements:
        if t != y and L.join(x, t) == y and L.meet(x, t) == L.bottom:
            return False
    return _interval_complements(L, L.bottom, y, z) == {t for t in co if L.leq(t, y)}


def _certify(L, x, trace, depth):
    if x == L.bottom or x == L.top:
        raise ElementOnBoundary(f"{x!r} is a bound of the lattice")
    co = set(L.complements(x))
    members = tuple(e for e in L.interior() if e not in co)

    if len(L.interior()) == 1:
        trace.record(
            depth=depth, case="leaf", lattice_size=len(L), interior_size=1,
            vertex=x,
        )
        return Leaf(x)

    # case 1 scans; remember whether the plain order-theoretic conditions
    # ever matched, since the prune step is only guaranteed when they never do
    had_case1_candidate = False
    rejected = []
    for y in L.atoms:
        if L.leq(y, x) or L.join(x, y) == L.top:
            rejected.append((y, "order"))
            continue
        had_case1_candidate = True
        if not _atom_split_sound(L, x, y, co):
            rejected.append((y, "witness"))
            continue
        return _emit_split(L, x, y, "case1_atom", co, members, rejected, trace, depth)
    for y in L.coatoms:
        if L.leq(x, y) or L.meet(x, y) == L.bottom:
            rejected.append((y, "order"))
            continue
        had_case1_candidate = True
        if not _coatom_split_sound(L, x, y, co):
            rejected.append((y, "witness"))
            continue
        return _emit_split(L, x, y, "case1_coatom", co, members, rejected, trace, depth)

    # prune: complements sitting among atoms/coatoms drag their whole
    # comparability components out of the lattice
    seeds = {y for y in L.atoms if y in co} | {y for y in L.coatoms if y in co}
    if seeds:
        removed = set()
        for comp in L.comparability_components():
            if comp & seeds:
                removed |= comp
        node = _try_prune(L, x, co, members, removed,
                          hard=not had_case1_candidate, trace=trace, depth=depth)
        if node is not None:
            return node

    # fallback prune: discard complements one at a time where sound
    for s in (e for e in L.elements if e in co):
        node = _try_prune(L, x, co, members, {s}, hard=False,
                          trace=trace, depth=depth)
        if node is not None:
            return node

    # comparable splits: an atom below x, else a coatom above x; with no
    # complements anywhere this is the classic endgame and always succeeds
    for y in L.atoms:
        if y == x or not L.leq(y, x):
            continue
        if _atom_split_sound(L, x, y, co):
            return _emit_split(L, x, y, "case2_atom", co, members, rejected,
                               trace, depth)
        rejected.append((y, "witness"))
    for y in L.coatoms:
        if y == x or not L.leq(x, y):
            continue
        if _coatom_split_sound(L, x, y, co):
            return _emit_split(L, x, y, "case2_coatom", co, members, rejected,
                               trace, depth)
        rejected.append((y, "witness"))

    raise InternalAssertion(
        "no-sound-step",
        f"no vertex or discard passes the soundness screen "
        f"(element {x!r}, interior {sorted(L.interior())}, "
        f"complements {sorted(co)})",
    )


def _try_prune(L, x, co, members, removed, hard, trace, depth):
    """Validate and emit a Prune, or report why it is unusable.

    With hard=True (the scans produced no case-1 candidate at all, so the
    discard is theory-guaranteed) failures raise InternalAssertion; with
    hard=False the caller falls through to the next stage.
    """
    def fail(tag, detail):
        if hard:
            raise InternalAssertion(tag, detail)
        return None

    if x in removed:
        return fail("prune-contains-element",
                    f"{x!r} in discard set {sorted(removed)}")
    if not removed <= co:
        return fail("prune-not-complements",
                    f"{sorted(removed - co)} are not complements of {x!r}")
    try:
        child_lattice = L.restrict([e for e in L.elements if e not in removed])
    except NonevadeError as exc:
        return fail("prune-sublattice", str(exc))
    if set(child_lattice.complements(x)) != co - removed:
        return fail("prune-invariance",
                    "complement set changed after discarding")
    removed_ordered = tuple(e for e in L.elements if e in removed)
    trace.record(
        depth=depth, case="prune", lattice_size=len(L),
        interior_size=len(members), removed=list(removed_ordered),
    )
    return Prune(removed_ordered, _certify(child_lattice, x, trace, depth + 1))


def _emit_split(L, x, y, mode, co, members, rejected, trace, depth):
    if y not in members:
        raise InternalAssertion("split-vertex-outside", f"{y!r} not in {members}")
    if mode in ("case1_atom", "case2_atom"):
        z = L.join(x, y)
        dl_lattice = _guarded("split-dl-sublattice", lambda: L.remove_atom(y))
        lk_lattice = _guarded("split-lk-sublattice", lambda: L.interval(y, L.top))
    else:
        z = L.meet(x, y)
        dl_lattice = _guarded("split-dl-sublattice", lambda: L.remove_coatom(y))
        lk_lattice = _guarded("split-lk-sublattice", lambda: L.interval(L.bottom, y))
    if z == L.top or z == L.bottom:
        raise InternalAssertion("split-degenerate-z", f"z={z!r} for vertex {y!r}")
    # re-check the screened identities on the built sublattices: the
    # deletion child sees the same complements, the link child exactly
    # the surviving ones
    if set(dl_lattice.complements(x)) != co:
        raise InternalAssertion(
            "claim1-complements",
            f"removing {y!r} changed the complement set of {x!r}",
        )
    if set(lk_lattice.complements(z)) != co & set(lk_lattice.elements):
        raise InternalAssertion(
            "claim2-complements",
            f"complements of {z!r} in the {y!r}-interval do not match",
        )
    trace.record(
        depth=depth, case=mode, lattice_size=len(L),
        interior_size=len(members), vertex=y, link_element=z,
        rejected=[list(r) for r in rejected],
    )
    dl = _certify(dl_lattice, x, trace, depth + 1)
    lk = _certify(lk_lattice, z, trace, depth + 1)
    return Split(y, mode, z, dl, lk)


# --- complex-level verification ------------------------------------------------


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of verify_certificate: ok flag plus first-failure location."""

    ok: bool
    path: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_certificate(complex_, certificate):
    """Check a certificate against a complex, using only link and deletion.

    No lattice reasoning is involved: a Leaf must sit on a one-vertex
    complex, a Prune must remove nothing that is present and its child
    must verify against the same complex, and a Split's children must
    verify against the deletion and link of its vertex.  Returns a
    VerifyResult carrying the path to the first failing node.
    """
    return _verify(complex_, certificate, ())


def _verify(c, node, path):
    if isinstance(node, Leaf):
        if len(c.vertices) != 1:
            return VerifyResult(
                False, path, f"leaf against {len(c.vertices)}-vertex complex"
            )
        if c.vertices[0] != node.vertex:
            return VerifyResult(
                False, path,
                f"leaf names {node.vertex!r} but the vertex is {c.vertices[0]!r}",
            )
        return VerifyResult(True)
    if isinstance(node, Prune):
        overlap = set(node.removed) & set(c.vertices)
        if overlap:
            return VerifyResult(
                False, path, f"pruned vertices {sorted(overlap)} are present"
            )
        return _verify(c, node.child, path + ("child",))
    if isinstance(node, Split):
        if node.vertex not in set(c.vertices):
            return VerifyResult(False, path, f"split vertex {node.vertex!r} missing")
        try:
            dl = c.deletion(node.vertex)
        except (LastVertex, UnknownVertex) as exc:
            return VerifyResult(False, path, f"deletion failed: {exc}")
        result = _verify(dl, node.dl, path + ("dl",))
        if not result.ok:
            return result
        try:
            lk = c.link(node.vertex)
        except (EmptyLink, UnknownVertex) as exc:
            return VerifyResult(False, path + ("lk",), f"link failed: {exc}")
        return _verify(lk, node.lk, path + ("lk",))
    return VerifyResult(False, path, f"unknown node {type(node).__name__}")


# --- collapse extraction ----------------------------------------------------------


def extract_collapses(certificate, complex_):
    """Compile a verified certificate into an elementary collapse sequence.

    The link child's sequence is lifted by the split vertex (collapsing
    the vertex's star onto the cone over the link's final vertex), then
    the pair ({vertex}, {vertex, final}) removes the cone, and the
    deletion child finishes.  The result is replay-checked before being
    returned.
    """
    result = verify_certificate(complex_, certificate)
    if not result.ok:
        raise VerificationFailed(
            f"certificate fails at {'/'.join(result.path) or 'root'}: {result.reason}"
        )
    raw, final = _extract(certificate, complex_)
    sequence = CollapseSequence(
        tuple(CollapsePair(a, b) for a, b in raw), final
    )
    replay_collapses(complex_, sequence)
    return sequence


def _extract(node, c):
    if isinstance(node, Leaf):
        return [], node.vertex
    if isinstance(node, Prune):
        return _extract(node.child, c)
    y = node.vertex
    lk_pairs, w = _extract(node.lk, c.link(y))
    dl_pairs, final = _extract(node.dl, c.deletion(y))
    lifted = [(a | {y}, b | {y}) for a, b in lk_pairs]
    lifted.append((frozenset({y}), frozenset({y, w})))
    return lifted + dl_pairs, final


# --- structural helpers -----------------------------------------------------------


def certificate_ground(certificate):
    """The vertex set a certificate claims to certify."""
    if isinstance(certificate, Leaf):
        return frozenset({certificate.vertex})
    if isinstance(certificate, Prune):
        return certificate_ground(certificate.child)
    return certificate_ground(certificate.dl) | {certificate.vertex}


def certificate_size(certificate):
    """Number of nodes, handy for summaries."""
    if isinstance(certificate, Leaf):
        return 1
    if isinstance(certificate, Prune):
        return 1 + certificate_size(certificate.child)
    return 1 + certificate_size(certificate.dl) + certificate_size(certificate.lk)


def certificate_to_obj(certificate):
    if isinstance(certificate, Leaf):
        return {"type": "leaf", "vertex": certificate.vertex}
    if isinstance(certificate, Prune):
        return {
            "type": "prune",
            "removed": list(certificate.removed),
            "child": certificate_to_obj(certificate.child),
        }
    return {
        "type": "split",
        "vertex": certificate.vertex,
        "mode": certificate.mode,
        "z": certificate.link_element,
        "dl": certificate_to_obj(certificate.dl),
        "lk": certificate_to_obj(certificate.lk),
    }


def certificate_from_obj(obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise ParseError("certificate node must be an object with a type")
    kind = obj["type"]
    try:
        if kind == "leaf":
            return Leaf(obj["vertex"])
        if kind == "prune":
            return Prune(tuple(obj["removed"]), certificate_from_obj(obj["child"]))
        if kind == "split":
            return Split(
                obj["vertex"],
                obj["mode"],
                obj["z"],
                certificate_from_obj(obj["dl"]),
                certificate_from_obj(obj["lk"]),
            )
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad certificate node: {exc}") from None
    raise ParseError(f"unknown certificate node type {kind!r}")


# --- lattice-level audit ------------------------------------------------------------


@dataclass
class AuditReport:
    """Per-node re-derivation of a certificate against its source lattice."""

    splits: int = 0
    prunes: int = 0
    leaves: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def audit_certificate(lattice, element, certificate):
    """Re-derive every node of a certificate and check the proof identities.

    At each Split the child lattices are reconstructed from the recorded
    mode, and the audit checks (a) the child complexes literally equal
    the deletion/link of the parent complex, and (b) the complement-set
    identities behind the case-1 reductions (or emptiness for case 2).
    Prunes must leave the complex label-identical.  Returns an
    AuditReport listing every discrepancy.
    """
    report = AuditReport()
    _audit(lattice, element, certificate, certificate_complex(lattice, element),
           (), report)
    return report


def _audit(L, x, node, c, path, report):
    where = "/".join(path) or "root"
    if isinstance(node, Leaf):
        report.leaves += 1
        if len(c.vertices) != 1 or c.vertices[0] != node.vertex:
            report.failures.append(f"{where}: leaf does not match the complex")
        return
    if isinstance(node, Prune):
        report.prunes += 1
        removed = set(node.removed)
        co = set(L.complements(x))
        if x in removed:
            report.failures.append(f"{where}: prune removed the certified element")
            return
        if not removed <= co:
            report.failures.append(f"{where}: prune removed non-complements")
            return
        child_L = L.restrict([e for e in L.elements if e not in removed])
        child_c = certificate_complex(child_L, x)
        if child_c != c:
            report.failures.append(f"{where}: complex changed across a prune")
            return
        _audit(child_L, x, node.child, c, path + ("child",), report)
        return
    # Split
    report.splits += 1
    y = node.vertex
    co = set(L.complements(x))
    if node.mode in ("case1_atom", "case2_atom"):
        dl_L, lk_L = L.remove_atom(y), L.interval(y, L.top)
        z = L.join(x, y)
        below_x = L.leq(y, x)
        consistent = (node.mode == "case2_atom") == below_x
    else:
        dl_L, lk_L = L.remove_coatom(y), L.interval(L.bottom, y)
        z = L.meet(x, y)
        consistent = (node.mode == "case2_coatom") == L.leq(x, y)
    if not consistent:
        report.failures.append(
            f"{where}: mode {node.mode} disagrees with how {y!r} compares to {x!r}"
        )
    if node.link_element != z:
        report.failures.append(
            f"{where}: recorded link element {node.link_element!r}, derived {z!r}"
        )
    if set(dl_L.complements(x)) != co:
        report.failures.append(f"{where}: deletion-side complement set changed")
    if set(lk_L.complements(z)) != co & set(lk_L.elements):
        report.failures.append(f"{where}: link-side complement set mismatch")
    dl_c = certificate_complex(dl_L, x)
    lk_c = certificate_complex(lk_L, z)
    if dl_c != c.deletion(y):
        report.failures.append(f"{where}: deletion identity fails at {y!r}")
    if lk_c != c.link(y):
        report.failures.append(f"{where}: link identity fails at {y!r}")
    _audit(dl_L, x, node.dl, dl_c, path + ("dl",), report)
    _audit(lk_L, z, node.lk, lk_c, path + ("lk",), report)
