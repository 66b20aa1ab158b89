"""Line-oriented manifold descriptors.

A descriptor is a block of `key = value` lines; `#` starts a comment and
blank lines are ignored.  Records in a batch file are separated by a line
holding only `---`.

    l = 2
    d = 1
    torsion = 2^2x1, 3^1x2
    splitting = k=1 s=2 r=2 r3=1,1
    flags = theta p1
    selection = member=2b(iii) j0=1
    smooth = false

`torsion` lists `p^r` terms with an optional multiplicity `xN` (`×N` is
also accepted); `0` or an empty value is the trivial group.  `splitting`
holds the exponent lists `s r rbar shat rcheck scheck r3` (comma
separated, default empty), `k`, and optionally the counts `t0..t4`, which
must agree with the lists.  `flags` names the nontrivial operations among
`sq2 theta triple p1 star psi smooth` (or `none`).  Selection keys are
`member`, `j0` and `j0_prime`.

>>> inv = parse_descriptor("l = 1\\ntorsion = 2^1\\nsplitting = s=1 r=1\\nflags = sq2")
>>> inv.split.s, inv.flags.sq2_nontrivial
((1,), True)
>>> parse_descriptor(format_descriptor(inv)) == inv
True
"""

from __future__ import annotations

import re

from .abelian import TorsionDecomposition
from .errors import InvalidSplitting, ParseError, Sigma3Error
from .invariants import ManifoldInvariants, OperationFlags, Selection, SplittingData

__all__ = ["parse_descriptor", "parse_descriptors", "format_descriptor", "KEYS"]

KEYS = ("l", "d", "torsion", "splitting", "flags", "selection", "smooth")
_LISTS = ("s", "r", "rbar", "shat", "rcheck", "scheck", "r3")
_COUNTS = {"t0": "s", "t1": "r", "t2": "rbar", "t3": "shat", "t4": "rcheck"}
_FLAG_NAMES = ("sq2", "theta", "triple", "p1", "star", "psi", "smooth")
_TORSION_TERM = re.compile(r"^(\d+)\^(\d+)(?:[x×](\d+))?$")


def _int(text, what, line):
    try:
        v = int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}", line) from None
    return v


def _bool(text, line):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off", ""):
        return False
    raise ParseError(f"expected a boolean, got {text!r}", line)


def _torsion(value, line):
    exps = {}
    body = value.replace(" ", "")
    if body in ("", "0"):
        return TorsionDecomposition()
    for term in body.split(","):
        m = _TORSION_TERM.match(term)
        if not m:
            raise InvalidSplitting(f"malformed torsion term {term!r}: expected p^r or p^rxN")
        p, r, mult = int(m[1]), int(m[2]), int(m[3] or 1)
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise InvalidSplitting(f"torsion term {term!r}: {p} is not prime")
        if r < 1 or mult < 1:
            raise InvalidSplitting(f"torsion term {term!r}: exponent and multiplicity must be >= 1")
        exps.setdefault(p, []).extend([r] * mult)
    return TorsionDecomposition(exps)


def _pairs(value, line):
    out = {}
    for item in value.split():
        if "=" not in item:
            raise ParseError(f"expected key=value, got {item!r}", line)
        k, v = item.split("=", 1)
        if k in out:
            raise ParseError(f"duplicate key {k!r}", line)
        out[k] = v
    return out


def _splitting(value, line):
    kv = _pairs(value, line)
    lists, counts, k = {}, {}, 0
    for key, v in kv.items():
        if key == "k":
            k = _int(v, "k", line)
        elif key in _LISTS:
            lists[key] = tuple(_int(x, key, line) for x in v.split(",") if x != "")
        elif key in _COUNTS:
            counts[key] = _int(v, key, line)
        else:
            raise ParseError(f"unknown splitting key {key!r}", line)
    for t, name in _COUNTS.items():
        if t in counts and counts[t] != len(lists.get(name, ())):
            raise InvalidSplitting(f"{t} = {counts[t]} but {name} lists {len(lists.get(name, ()))} exponent(s)")
    if "t4" in counts and counts["t4"] != len(lists.get("scheck", ())):
        raise InvalidSplitting(f"t4 = {counts['t4']} but scheck lists {len(lists.get('scheck', ()))} exponent(s)")
    return SplittingData(k=k, **lists)


def _flags(value, line):
    names = [n for n in re.split(r"[\s,+]+", value.strip().lower()) if n]
    if names == ["none"] or names == ["trivial"]:
        names = []
    unknown = [n for n in names if n not in _FLAG_NAMES]
    if unknown:
        raise ParseError(f"unknown flag(s) {', '.join(unknown)}", line)
    flags = OperationFlags(
        sq2_nontrivial="sq2" in names,
        theta_nontrivial="theta" in names,
        triple_nontrivial="triple" in names,
        p1_nontrivial="p1" in names,
        condition_star="star" in names,
        psi_trivial="psi" not in names,
    )
    return flags, "smooth" in names


def _selection(value, line):
    kv = _pairs(value, line)
    bad = set(kv) - {"member", "j0", "j0_prime"}
    if bad:
        raise ParseError(f"unknown selection key(s) {', '.join(sorted(bad))}", line)
    return Selection(
        member=kv.get("member"),
        j0=_int(kv["j0"], "j0", line) if "j0" in kv else None,
        j0_prime=_int(kv["j0_prime"], "j0_prime", line) if "j0_prime" in kv else None,
    )


def parse_descriptor(text: str, validate: bool = True) -> ManifoldInvariants:
    """One descriptor record -> ManifoldInvariants (validated unless asked not to)."""
    fields = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", raw)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ParseError(f"unknown descriptor key {key!r}", raw)
        if key in fields:
            raise ParseError(f"duplicate descriptor key {key!r}", raw)
        fields[key] = (value, raw)
    get = lambda k: fields.get(k, ("", None))  # noqa: E731
    l = _int(get("l")[0] or "0", "l", get("l")[1])
    d = _int(get("d")[0] or "0", "d", get("d")[1])
    torsion = _torsion(*get("torsion"))
    split = _splitting(*get("splitting"))
    flags, smooth = _flags(*get("flags"))
    if "smooth" in fields:
        smooth = smooth or _bool(*fields["smooth"])
    selection = _selection(*fields["selection"]) if "selection" in fields else None
    inv = ManifoldInvariants(l, d, torsion, flags, split, selection, smooth)
    return inv.validate() if validate else inv


def parse_descriptors(text: str, validate: bool = True):
    """Split a batch file on `---` lines; returns the list of record texts and parsed results.

    Each result is either a ManifoldInvariants or the exception it raised.
    """
    records, cur = [], []
    for line in text.splitlines():
        if line.strip() == "---":
            records.append("\n".join(cur))
            cur = []
        else:
            cur.append(line)
    records.append("\n".join(cur))
    records = [r for r in records if any(ln.split("#", 1)[0].strip() for ln in r.splitlines())]
    out = []
    for r in records:
        try:
            out.append((r, parse_descriptor(r, validate)))
        except Sigma3Error as exc:
            out.append((r, exc))
    return out


def _torsion_text(t: TorsionDecomposition):
    terms = []
    for p, exps in t.primaries:
        for e in sorted(set(exps)):
            n = exps.count(e)
            terms.append(f"{p}^{e}" + (f"x{n}" if n > 1 else ""))
    return ", ".join(terms) or "0"


def format_descriptor(inv: ManifoldInvariants) -> str:
    """Canonical descriptor text; parse_descriptor(format_descriptor(x)) == x."""
    sp, f = inv.split, inv.flags
    split = [f"k={sp.k}"] + [f"{n}={','.join(map(str, getattr(sp, n)))}" for n in _LISTS if getattr(sp, n)]
    names = [n for n, on in (("sq2", f.sq2_nontrivial), ("theta", f.theta_nontrivial),
                             ("triple", f.triple_nontrivial), ("p1", f.p1_nontrivial),
                             ("star", f.condition_star), ("psi", not f.psi_trivial)) if on]  # fmt: skip
    lines = [
        f"l = {inv.l}",
        f"d = {inv.d}",
        f"torsion = {_torsion_text(inv.torsion)}",
        f"splitting = {' '.join(split)}",
        f"flags = {' '.join(names) or 'none'}",
    ]
    sel = inv.selection
    if sel is not None:
        parts = [f"{k}={v}" for k, v in (("member", sel.member), ("j0", sel.j0), ("j0_prime", sel.j0_prime)) if v is not None]
        lines.append(f"selection = {' '.join(parts)}")
    lines.append(f"smooth = {'true' if inv.smooth else 'false'}")
    return "\n".join(lines) + "\n"
