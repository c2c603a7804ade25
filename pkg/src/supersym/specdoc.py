"""Reading and writing group-scheme spec documents (YAML).

A document holds the spec fields ``g``, ``r``, ``u``, ``d``, ``pi0``,
``galois`` and an optional ``options`` block.  A machine-format report written
by the CLI is also accepted: its ``spec`` entry is read back.

Canonical serialization sorts keys and prints non-integral rationals as
``"p/q"`` strings in lowest terms.
"""
from fractions import Fraction

import yaml

from .errors import InvalidSpec
from .linear import FiniteGroup
from .semiabelian import GaloisData, GroupSchemeSpec

SPEC_KEYS = {"g", "r", "u", "d", "pi0", "galois", "options", "name"}
OPTION_KEYS = {"n", "max_dim", "max_degree", "format"}
GALOIS_KEYS = {"group", "cocharacter_rep", "abelian_rep", "lattice_rep", "pi0_action"}
GROUP_KEYS = {"cyclic", "table", "identity", "product"}
REPORT_KEYS = {"command", "spec", "specs", "report"}


class ParseError(InvalidSpec):
    """Malformed document; carries a 1-based line and column when known."""

    def __init__(self, message, line=None, column=None, source="<spec>"):
        self.line, self.column, self.source = line, column, source
        where = f"{source}:{line}:{column}: " if line is not None else f"{source}: "
        super().__init__(where + message)


class _Doc:
    """Parallel walk over composed YAML nodes and constructed Python values."""

    def __init__(self, node, source):
        self.node = node
        self.source = source

    def fail(self, message, node=None):
        node = node or self.node
        mark = node.start_mark
        raise ParseError(message, mark.line + 1, mark.column + 1, self.source)

    def value(self):
        return yaml.safe_load(yaml.serialize(self.node))

    def mapping(self, allowed):
        if not isinstance(self.node, yaml.MappingNode):
            self.fail("expected a mapping")
        out = {}
        for k, v in self.node.value:
            key = yaml.safe_load(yaml.serialize(k)) if not isinstance(k, yaml.ScalarNode) else _scalar(k)
            if allowed is not None and key not in allowed:
                self.fail(f"unknown key {key!r}", k)
            if key in out:
                self.fail(f"duplicate key {key!r}", k)
            out[key] = _Doc(v, self.source)
        return out

    def integer(self, lo=None):
        v = self.value()
        if not isinstance(v, int) or isinstance(v, bool):
            self.fail(f"expected an integer, got {v!r}")
        if lo is not None and v < lo:
            self.fail(f"expected an integer >= {lo}, got {v}")
        return v

    def rational(self):
        v = self.value()
        if isinstance(v, bool) or isinstance(v, float):
            self.fail(f"expected an exact rational (integer or 'p/q'), got {v!r}")
        try:
            return Fraction(v)
        except (TypeError, ValueError, ZeroDivisionError):
            self.fail(f"expected an exact rational (integer or 'p/q'), got {v!r}")

    def matrix(self):
        if not isinstance(self.node, yaml.SequenceNode):
            self.fail("expected a matrix (list of rows)")
        rows = []
        for r in self.node.value:
            if not isinstance(r, yaml.SequenceNode):
                self.fail("expected a row (list of entries)", r)
            rows.append([_Doc(x, self.source).rational() for x in r.value])
        if rows and any(len(row) != len(rows[0]) for row in rows):
            self.fail("matrix rows have different lengths")
        return rows


def _scalar(node):
    return yaml.safe_load(yaml.serialize(node))


def _group(doc):
    if isinstance(doc.node, yaml.ScalarNode):
        return FiniteGroup.cyclic(doc.integer(lo=1))
    m = doc.mapping(GROUP_KEYS)
    try:
        if "cyclic" in m:
            if set(m) != {"cyclic"}:
                doc.fail("'cyclic' cannot be combined with other keys")
            return FiniteGroup.cyclic(m["cyclic"].integer(lo=1))
        if "product" in m:
            if set(m) != {"product"} or not isinstance(m["product"].node, yaml.SequenceNode):
                doc.fail("'product' takes a list of groups")
            parts = [_group(_Doc(x, doc.source)) for x in m["product"].node.value]
            if not parts:
                doc.fail("'product' needs at least one group")
            G = parts[0]
            for H in parts[1:]:
                G = FiniteGroup.direct_product(G, H)
            return G
        if "table" in m:
            table = m["table"].value()
            ident = m["identity"].integer(lo=0) if "identity" in m else 0
            return FiniteGroup(table, identity=ident)
    except InvalidSpec as exc:
        if isinstance(exc, ParseError):
            raise
        doc.fail(str(exc))
    except (TypeError, ValueError, IndexError) as exc:
        doc.fail(f"invalid group: {exc}")
    doc.fail("group needs one of 'cyclic', 'table' or 'product'")


def _rep(doc):
    m = doc.mapping(None)
    out = {}
    for k, v in m.items():
        if not isinstance(k, int) or isinstance(k, bool):
            doc.fail(f"representation keys must be group elements (integers), got {k!r}")
        out[k] = v.matrix()
    return out


def _galois(doc):
    m = doc.mapping(GALOIS_KEYS)
    if "group" not in m:
        doc.fail("galois data needs a 'group'")
    G = _group(m["group"])
    reps = {k: _rep(m[k]) if k in m else None for k in ("cocharacter_rep", "abelian_rep", "lattice_rep")}
    for name, rep in reps.items():
        for h in rep or {}:
            if not 0 <= h < G.order:
                m[name].fail(f"element {h} is not in a group of order {G.order}")
    pi0_action = None
    if "pi0_action" in m:
        pm = m["pi0_action"].mapping(None)
        pi0_action = {}
        for k, v in pm.items():
            if not isinstance(k, int) or not 0 <= k < G.order:
                m["pi0_action"].fail(f"invalid group element {k!r}")
            perm = v.value()
            if not isinstance(perm, list) or not all(isinstance(x, int) for x in perm):
                v.fail("a pi0_action entry must be a list of component indices")
            pi0_action[k] = perm
    return GaloisData(G, reps["cocharacter_rep"] or {}, reps["abelian_rep"], reps["lattice_rep"], pi0_action)


def _options(doc):
    m = doc.mapping(OPTION_KEYS)
    out = {}
    for k in ("n", "max_dim", "max_degree"):
        if k in m:
            out[k] = m[k].integer(lo=None if k == "n" else 0)
    if "format" in m:
        fmt = m["format"].value()
        if fmt not in ("table", "machine"):
            m["format"].fail(f"format must be 'table' or 'machine', got {fmt!r}")
        out["format"] = fmt
    return out


def parse_spec(text, source="<spec>"):
    """Parse a spec document; returns ``(GroupSchemeSpec, options)``."""
    try:
        node = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line, col = (mark.line + 1, mark.column + 1) if mark else (None, None)
        raise ParseError(f"YAML syntax error: {exc.problem or exc}", line, col, source) from exc
    except yaml.YAMLError as exc:
        raise ParseError(f"YAML error: {exc}", source=source) from exc
    if node is None:
        return GroupSchemeSpec(), {}
    doc = _Doc(node, source)
    if isinstance(node, yaml.MappingNode):
        keys = {_scalar(k) for k, _ in node.value}
        if keys & {"command", "report"}:
            top = doc.mapping(REPORT_KEYS)
            if "spec" not in top:
                doc.fail("report document has no single 'spec' entry")
            doc = top["spec"]
    return _spec_from(doc)


def _spec_from(doc):
    m = doc.mapping(SPEC_KEYS)
    kwargs = {k: m[k].integer(lo=0) for k in ("g", "r", "u", "d") if k in m}
    if "pi0" in m:
        kwargs["pi0"] = _group(m["pi0"])
    if "galois" in m:
        kwargs["galois"] = _galois(m["galois"])
    options = _options(m["options"]) if "options" in m else {}
    try:
        spec = GroupSchemeSpec(**kwargs)
    except InvalidSpec as exc:
        doc.fail(str(exc))
    return spec, options


def load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", source=str(path)) from exc
    except UnicodeDecodeError as exc:
        raise ParseError("file is not valid UTF-8", source=str(path)) from exc
    return parse_spec(text, str(path))


# ---------------------------------------------------------------------------
# canonical output


def canon(x):
    """Canonical scalar: ints stay ints, other rationals become ``"p/q"``."""
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {canon_key(k): canon(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [canon(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return canon(x.item())
    return x


def canon_key(k):
    return k if isinstance(k, (int, str)) else str(k)


def group_doc(G):
    return {"identity": G.identity, "table": [list(row) for row in G.table]}


def _rep_doc(rep):
    if not rep:
        return None
    return {int(k): [[canon(Fraction(x)) for x in row] for row in _rows(m)] for k, m in rep.items()}


def _rows(m):
    return m.to_fractions() if hasattr(m, "to_fractions") else m


def spec_doc(spec, options=None):
    """Canonical document for a spec (the inverse of :func:`parse_spec`)."""
    out = {"g": spec.g, "r": spec.r, "u": spec.u, "d": spec.d, "pi0": group_doc(spec.pi0)}
    if spec.galois is not None:
        G = spec.galois
        gal = {"group": group_doc(G.group)}
        for key in ("cocharacter_rep", "abelian_rep", "lattice_rep"):
            r = _rep_doc(getattr(G, key))
            if r:
                gal[key] = r
        if G.pi0_action:
            gal["pi0_action"] = {int(k): list(v) for k, v in G.pi0_action.items()}
        out["galois"] = gal
    if options:
        out["options"] = dict(options)
    return out


def dump(doc):
    """Deterministic YAML text."""
    return yaml.safe_dump(canon(doc), sort_keys=True, default_flow_style=None, allow_unicode=True, width=100)
