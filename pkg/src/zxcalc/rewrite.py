"""Rule matching, rule application and a measure-decreasing simplifier."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .diagram import (Bnd, Diagram, Hadamard, Phase, Port, PVar, XSpider, ZSpider, ZWWhite,
                      check, is_spider, node_key, splice)
from .rules import Z3PAIR, DomainError, RewriteRule

PASSES = ("fusion", "identity", "selfloop", "hopf", "hcancel", "colour")
DEFAULT_PASSES = PASSES


class EmbeddingInvalid(ValueError):
    """The host diagram changed since the embedding was found."""


@dataclass
class MatchEmbedding:
    rule: str
    nodes: dict                                   # pattern node id -> host node id
    boundary: dict                                # pattern Bnd -> host endpoint on the far side
    params: dict = field(default_factory=dict)
    legs: dict = field(default_factory=dict)      # pattern Bnd -> host leg (edge index, end position)
    internal: frozenset = frozenset()             # host edges covered by pattern edges
    fingerprint: tuple = ()

    @property
    def host_nodes(self) -> tuple:
        return tuple(sorted(self.nodes.values(), key=node_key))


# ---------------------------------------------------------------- patterns

def _pattern_params(rule: RewriteRule) -> dict:
    out = {}
    for name, dom in rule.params:
        out[name] = (PVar(name + ".0"), PVar(name + ".1")) if dom == Z3PAIR else PVar(name)
    return out


def pattern_of(rule: RewriteRule):
    """LHS built over pattern variables, or None when the LHS cannot serve as a pattern."""
    try:
        pat = rule.lhs(**_pattern_params(rule))
    except Exception:  # arithmetic on pattern variables: the rule is not matchable
        return None
    if not pat.nodes:
        return None
    if any(isinstance(a, Bnd) and isinstance(b, Bnd) for a, b in pat.edges):
        return None
    return pat


def _close(a, b) -> bool:
    if isinstance(a, Phase) and isinstance(b, Phase):
        if a.exact_p and b.exact_p:
            return a == b
        x = (a.radians - b.radians) % (2 * math.pi)
        return min(x, 2 * math.pi - x) < 1e-12
    try:
        return abs(complex(a) - complex(b)) < 1e-12
    except TypeError:
        return a == b


def _unify(pv, hv, bind: dict) -> bool:
    if isinstance(pv, PVar):
        if pv.name in bind:
            return _close(bind[pv.name], hv)
        bind[pv.name] = hv
        return True
    return _close(pv, hv)


def _kind_match(pk, hk, bind: dict) -> bool:
    if type(pk) is not type(hk):
        return False
    if isinstance(pk, (ZSpider, XSpider)):
        return len(pk.phases) == len(hk.phases) and all(_unify(a, b, bind) for a, b in zip(pk.phases, hk.phases))
    if isinstance(pk, ZWWhite):
        return _unify(pk.r, hk.r, bind)
    if hasattr(pk, "lam"):
        return _unify(pk.lam, hk.lam, bind)
    if hasattr(pk, "power"):
        return pk.power == hk.power
    return True


def _legs(d: Diagram) -> dict:
    """node -> list of (edge index, end position, port)."""
    out = {n: [] for n in d.nodes}
    for i, (a, b) in enumerate(d.edges):
        for pos, e in enumerate((a, b)):
            if isinstance(e, Port):
                out[e.node].append((i, pos, e.port))
    return out


def _port_ok(kind, pport: int, hport: int, dim: int) -> bool:
    if not is_spider(kind):
        return pport == hport
    if dim == 3 and isinstance(kind, XSpider):
        return (pport == 0) == (hport == 0)
    return True


def _dir_profile(kind, legs, dim):
    if dim == 3 and isinstance(kind, XSpider):
        return sorted(p == 0 for _, _, p in legs)
    return len(legs)


def _fingerprint(d: Diagram, hosts) -> tuple:
    out = []
    for h in sorted(hosts, key=node_key):
        if h not in d.nodes:
            return ("missing", h)
        inc = tuple(sorted(repr(d.edges[i]) for i, _, _ in _legs_of(d, h)))
        out.append((h, repr(d.nodes[h]), inc))
    return tuple(out)


def _legs_of(d: Diagram, nid: str):
    return [(i, pos, e.port) for i, (a, b) in enumerate(d.edges)
            for pos, e in enumerate((a, b)) if isinstance(e, Port) and e.node == nid]


def find_matches(d: Diagram, rule: RewriteRule) -> list:
    """All embeddings of the rule LHS, one per host node set, sorted by host node ids."""
    if d.dim != rule.dim or d.calculus != rule.calculus or not d.nodes:
        return []
    pat = pattern_of(rule)
    if pat is None:
        return []
    plegs, hlegs = _legs(pat), _legs(d)
    order = _bfs_order(pat)
    adj = _adjacency(pat)
    hadj = _adjacency(d)
    found = {}

    def extend(k, nmap, bind):
        if k == len(order):
            emb = _assign_legs(d, pat, rule, nmap, bind, plegs, hlegs)
            if emb is not None:
                key = tuple(sorted(nmap.values(), key=node_key))
                found.setdefault(key, emb)
            return
        pn = order[k]
        pk = pat.nodes[pn]
        used = set(nmap.values())
        for hn in d.node_ids():
            if hn in used:
                continue
            if _dir_profile(pk, plegs[pn], d.dim) != _dir_profile(d.nodes[hn], hlegs[hn], d.dim):
                continue
            if any(q in nmap and nmap[q] not in hadj[hn] for q in adj[pn]):
                continue
            b2 = dict(bind)
            if not _kind_match(pk, d.nodes[hn], b2):
                continue
            nmap[pn] = hn
            extend(k + 1, nmap, b2)
            del nmap[pn]

    extend(0, {}, {})
    return [found[k] for k in sorted(found, key=lambda t: [node_key(x) for x in t])]


def _adjacency(d: Diagram) -> dict:
    adj = {n: set() for n in d.nodes}
    for a, b in d.edges:
        if isinstance(a, Port) and isinstance(b, Port):
            adj[a.node].add(b.node)
            adj[b.node].add(a.node)
    return adj


def _bfs_order(d: Diagram) -> list:
    adj = _adjacency(d)
    order, seen = [], set()
    for start in d.node_ids():
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            n = queue.pop(0)
            order.append(n)
            for m in sorted(adj[n], key=node_key):
                if m not in seen:
                    seen.add(m)
                    queue.append(m)
    return order


def _assign_legs(d, pat, rule, nmap, bind, plegs, hlegs):
    dim = d.dim
    internal = [(a, b) for a, b in pat.edges if isinstance(a, Port) and isinstance(b, Port)]
    bnd = [(a, b) if isinstance(a, Port) else (b, a) for a, b in pat.edges
           if not (isinstance(a, Port) and isinstance(b, Port))]
    used = set()
    covered = []
    legs = {}

    def host_ends(i):
        return d.edges[i]

    def go_internal(k):
        if k == len(internal):
            return go_bnd(0)
        a, b = internal[k]
        ka, kb = pat.nodes[a.node], pat.nodes[b.node]
        ha, hb = nmap[a.node], nmap[b.node]
        for i, pos, port in hlegs[ha]:
            if (i, pos) in used or not _port_ok(ka, a.port, port, dim):
                continue
            other = host_ends(i)[1 - pos]
            if not isinstance(other, Port) or other.node != hb or (i, 1 - pos) in used:
                continue
            if not _port_ok(kb, b.port, other.port, dim):
                continue
            used.update({(i, pos), (i, 1 - pos)})
            covered.append(i)
            if go_internal(k + 1):
                return True
            covered.pop()
            used.difference_update({(i, pos), (i, 1 - pos)})
        return False

    def go_bnd(k):
        if k == len(bnd):
            return True
        p, b = bnd[k]
        kp = pat.nodes[p.node]
        h = nmap[p.node]
        for i, pos, port in hlegs[h]:
            if (i, pos) in used or not _port_ok(kp, p.port, port, dim):
                continue
            used.add((i, pos))
            legs[b] = (i, pos)
            if go_bnd(k + 1):
                return True
            del legs[b]
            used.discard((i, pos))
        return False

    if not go_internal(0):
        return None
    params = {}
    for name, dom in rule.params:
        if dom == Z3PAIR:
            vals = (bind.get(name + ".0"), bind.get(name + ".1"))
            if None in vals:
                return None
            params[name] = vals
        else:
            if name not in bind:
                return None
            params[name] = bind[name]
    boundary = {b: d.edges[i][1 - pos] for b, (i, pos) in legs.items()}
    return MatchEmbedding(rule.name, dict(nmap), boundary, params, dict(legs), frozenset(covered),
                          _fingerprint(d, nmap.values()))


def _next_id(nodes) -> int:
    best = -1
    for n in nodes:
        t = n[1:]
        if n.startswith("n") and t.isdigit():
            best = max(best, int(t))
    return best + 1


def apply_at(d: Diagram, rule: RewriteRule, m: MatchEmbedding) -> Diagram:
    """Replace the matched LHS by the RHS instantiated with the bound parameters."""
    if m.rule != rule.name or _fingerprint(d, m.nodes.values()) != m.fingerprint:
        raise EmbeddingInvalid(f"embedding of {m.rule} is stale")
    params = dict(m.params)
    if rule.derive is not None:
        params = rule.derive(params)
        if params is None:
            raise DomainError(f"{rule.name}: side condition fails for the bound parameters")
    rhs = rule.rhs(**params)
    hosts = set(m.nodes.values())
    joint = {leg: Bnd("P" + b.side, b.index) for b, leg in m.legs.items()}
    nodes = {k: v for k, v in d.nodes.items() if k not in hosts}
    edges = []
    for i, (a, b) in enumerate(d.edges):
        if i in m.internal:
            continue
        edges.append((joint.get((i, 0), a), joint.get((i, 1), b)))
    c = _next_id(d.nodes)
    rename = {}
    for k in rhs.node_ids():
        rename[k] = f"n{c}"
        c += 1
    nodes.update({rename[k]: v for k, v in rhs.nodes.items()})

    def f(e):
        return Port(rename[e.node], e.port) if isinstance(e, Port) else Bnd("P" + e.side, e.index)

    edges += [(f(a), f(b)) for a, b in rhs.edges]
    return check(splice(d.calculus, d.dim, nodes, edges, d.n_in, d.n_out))


# ---------------------------------------------------------------- simplifier

def measure(d: Diagram) -> tuple:
    hs = sum(isinstance(k, Hadamard) for k in d.nodes.values())
    return (len(d.nodes), hs, len(d.edges))


def step_bound(d: Diagram) -> int:
    return max(1, sum(measure(d))) ** 2


def _zero_phases(kind) -> bool:
    if isinstance(kind, ZWWhite):
        return _close(kind.r, 1.0)
    return all(p.is_zero() for p in kind.phases)


def _fusable(d: Diagram, kind) -> bool:
    if isinstance(kind, ZWWhite):
        return True
    if isinstance(kind, ZSpider):
        return True
    return isinstance(kind, XSpider) and d.dim == 2


def _rebuild(d, nodes, edges) -> Diagram:
    return check(splice(d.calculus, d.dim, nodes, edges, d.n_in, d.n_out))


def _fuse(k1, k2):
    if isinstance(k1, ZWWhite):
        return ZWWhite(complex(k1.r) * complex(k2.r))
    return type(k1)(tuple(a + b for a, b in zip(k1.phases, k2.phases)))


def _pass_fusion(d: Diagram):
    for i, (a, b) in enumerate(d.edges):
        if not (isinstance(a, Port) and isinstance(b, Port)) or a.node == b.node:
            continue
        ka, kb = d.nodes[a.node], d.nodes[b.node]
        if type(ka) is not type(kb) or not is_spider(ka) or not _fusable(d, ka):
            continue
        u, v = sorted((a.node, b.node), key=node_key)
        nodes = {k: w for k, w in d.nodes.items() if k != v}
        nodes[u] = _fuse(ka, kb)

        def mv(e):
            return Port(u, e.port) if isinstance(e, Port) and e.node == v else e

        edges = [(mv(x), mv(y)) for j, (x, y) in enumerate(d.edges) if j != i]
        return _rebuild(d, nodes, edges)
    return None


def _pass_identity(d: Diagram):
    for n in d.node_ids():
        k = d.nodes[n]
        if not is_spider(k) or not _zero_phases(k):
            continue
        legs = _legs_of(d, n)
        if len(legs) != 2 or legs[0][0] == legs[1][0]:
            continue
        if d.dim == 3 and isinstance(k, XSpider) and (legs[0][2] == 0) == (legs[1][2] == 0):
            continue
        j = Bnd("K", 0)
        spots = {(i, pos) for i, pos, _ in legs}
        edges = [tuple(j if (i, p) in spots else e for p, e in enumerate(ed)) for i, ed in enumerate(d.edges)]
        return _rebuild(d, {x: w for x, w in d.nodes.items() if x != n}, edges)
    return None


def _pass_selfloop(d: Diagram):
    for i, (a, b) in enumerate(d.edges):
        if isinstance(a, Port) and isinstance(b, Port) and a.node == b.node:
            k = d.nodes[a.node]
            if not is_spider(k) or (d.dim == 3 and isinstance(k, XSpider)):
                continue
            return _rebuild(d, dict(d.nodes), [e for j, e in enumerate(d.edges) if j != i])
    return None


def _pass_hopf(d: Diagram):
    if d.dim != 2 or d.calculus != "zx":
        return None
    pairs = {}
    for i, (a, b) in enumerate(d.edges):
        if isinstance(a, Port) and isinstance(b, Port) and a.node != b.node:
            ka, kb = type(d.nodes[a.node]), type(d.nodes[b.node])
            if {ka, kb} == {ZSpider, XSpider}:
                pairs.setdefault(tuple(sorted((a.node, b.node), key=node_key)), []).append(i)
    for key in sorted(pairs, key=lambda t: [node_key(x) for x in t]):
        idx = pairs[key]
        if len(idx) >= 2:
            drop = set(idx[:2])
            return _rebuild(d, dict(d.nodes), [e for j, e in enumerate(d.edges) if j not in drop])
    return None


def _other(d, i, pos):
    return d.edges[i][1 - pos]


def _pass_hcancel(d: Diagram):
    period = 2 if d.dim == 2 else 4
    for n in d.node_ids():
        k = d.nodes[n]
        if isinstance(k, Hadamard) and k.power % period == 0:
            legs = _legs_of(d, n)
            if legs[0][0] == legs[1][0]:
                continue
            j = Bnd("K", 0)
            spots = {(i, pos) for i, pos, _ in legs}
            edges = [tuple(j if (i, p) in spots else e for p, e in enumerate(ed)) for i, ed in enumerate(d.edges)]
            return _rebuild(d, {x: w for x, w in d.nodes.items() if x != n}, edges)
    for i, (a, b) in enumerate(d.edges):
        if not (isinstance(a, Port) and isinstance(b, Port)) or a.node == b.node:
            continue
        ka, kb = d.nodes[a.node], d.nodes[b.node]
        if not (isinstance(ka, Hadamard) and isinstance(kb, Hadamard)):
            continue
        if d.dim == 3:
            # H^p then H^q along output -> input
            if {a.port, b.port} != {0, 1}:
                continue
            first, second = (a, b) if a.port == 1 else (b, a)
            merged = Hadamard((d.nodes[first.node].power + d.nodes[second.node].power) % 4)
            nodes = {x: w for x, w in d.nodes.items() if x != second.node}
            nodes[first.node] = merged

            def mv(e, s=second, f=first):
                return Port(f.node, 1) if isinstance(e, Port) and e.node == s.node else e

            edges = [(mv(x), mv(y)) for j, (x, y) in enumerate(d.edges) if j != i]
            return _rebuild(d, nodes, edges)
        u, v = a.node, b.node
        nodes = {x: w for x, w in d.nodes.items() if x not in (u, v)}
        j = Bnd("K", 0)
        edges = []
        for t, ed in enumerate(d.edges):
            if t == i:
                continue
            edges.append(tuple(j if isinstance(e, Port) and e.node in (u, v) else e for e in ed))
        if sum(e == j for ed in edges for e in ed) != 2:
            continue  # H pair on a closed cycle
        return _rebuild(d, nodes, edges)
    return None


def _pass_colour(d: Diagram):
    if d.dim != 2 or d.calculus != "zx":
        return None
    for n in d.node_ids():
        k = d.nodes[n]
        if not isinstance(k, XSpider):
            continue
        legs = _legs_of(d, n)
        if not legs:
            continue
        hs = []
        for i, pos, _ in legs:
            o = _other(d, i, pos)
            if not (isinstance(o, Port) and isinstance(d.nodes[o.node], Hadamard)):
                break
            hs.append((o.node, i))
        else:
            names = [h for h, _ in hs]
            if len(set(names)) != len(names):
                continue  # an H box with both ports on this spider
            nodes = {x: w for x, w in d.nodes.items() if x not in names}
            nodes[n] = ZSpider(k.phases)
            through = {i for _, i in hs}
            edges = []
            for t, ed in enumerate(d.edges):
                if t in through:
                    continue
                edges.append(tuple(Port(n, 0) if isinstance(e, Port) and e.node in names else e for e in ed))
            return _rebuild(d, nodes, edges)
    return None


_PASS_FN = {"fusion": _pass_fusion, "identity": _pass_identity, "selfloop": _pass_selfloop,
            "hopf": _pass_hopf, "hcancel": _pass_hcancel, "colour": _pass_colour}


def simplify(d: Diagram, passes=None, trace: list | None = None) -> Diagram:
    """Apply the passes to a fixpoint; every step strictly decreases measure(d)."""
    passes = list(DEFAULT_PASSES if passes is None else passes)
    for p in passes:
        if p not in _PASS_FN:
            raise ValueError(f"unknown pass {p}")
    check(d)
    bound = step_bound(d)
    steps = 0
    cur = d
    while True:
        for p in passes:
            nxt = _PASS_FN[p](cur)
            if nxt is not None:
                if not measure(nxt) < measure(cur):
                    raise AssertionError(f"pass {p} did not decrease the measure")
                if trace is not None:
                    trace.append(p)
                cur = nxt
                steps += 1
                if steps > bound:
                    raise RuntimeError("step bound exceeded")
                break
        else:
            return cur
