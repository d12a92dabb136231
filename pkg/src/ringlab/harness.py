"""Reports, golden-table reproduction, the OEIS A109746 check and the zoo scan."""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from math import lcm

from .analysis import Mu1TooLarge, MuProfile, StructuralFlags, mu_profile, structural_flags
from .constructions import CorbasRing, GaloisField, GaloisRing, MatrixRing, ZMod
from .core import DEFAULT_MAX_SIZE, DEFAULT_TABLE_CAP, FiniteRing, characteristic
from .numtheory import (
    carmichael_lambda,
    factorize,
    max_exponent,
    predicted_profile_corbas,
    predicted_profile_galois_ring,
    predicted_profile_matrix,
    predicted_profile_zmod,
)
from .specparse import parse_ring_spec

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2

DEFAULT_SCAN_SIZE = 256


@dataclass
class Config:
    max_ring_size: int = DEFAULT_MAX_SIZE
    table_cap: int = DEFAULT_TABLE_CAP
    mu1_bound: int = 10**6
    output_format: str = "text"
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("max_ring_size", "table_cap", "mu1_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.output_format not in ("text", "json"):
            raise ValueError("output_format must be 'text' or 'json'")


@dataclass
class Prediction:
    mu0: int
    mu1: int
    muP: int
    source: str


def predict(R: FiniteRing) -> Prediction | None:
    """Closed-form (mu0, mu1, muP) for the families that have one."""
    if isinstance(R, ZMod) and R.n >= 2:
        return Prediction(*predicted_profile_zmod(R.n), source="zmod_carmichael")
    if isinstance(R, GaloisField):
        return Prediction(1, R.q - 1, 0, source="field")
    if isinstance(R, GaloisRing):
        return Prediction(*predicted_profile_galois_ring(R.p, R.k, R.d), source="galois_ring")
    if isinstance(R, CorbasRing):
        return Prediction(*predicted_profile_corbas(R.p, R.k, R.s == 0), source="corbas_table")
    if isinstance(R, MatrixRing):
        return Prediction(*predicted_profile_matrix(R.p, R.k, R.n), source="gl_exponent")
    return None


def prepare(R: FiniteRing, config: Config) -> FiniteRing:
    if not isinstance(R, ZMod):
        R.build_tables(config.table_cap)
    return R


@dataclass
class RingReport:
    spec: str
    size: int
    characteristic: int
    flags: StructuralFlags | None
    measured: MuProfile | None
    predicted: Prediction | None
    matches: dict[str, bool]
    config: dict
    status: str = "ok"
    message: str = ""
    schema_version: int = SCHEMA_VERSION

    @property
    def all_match(self) -> bool:
        return self.status == "ok" and all(self.matches.values())

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "spec": self.spec,
            "size": self.size,
            "characteristic": self.characteristic,
            "status": self.status,
            "message": self.message,
            "flags": None if self.flags is None else self.flags.to_dict(),
            "measured": None if self.measured is None else self.measured.to_dict(),
            "predicted": None if self.predicted is None else asdict(self.predicted),
            "matches": dict(self.matches),
            "config": dict(self.config),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RingReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')}")
        return cls(
            spec=d["spec"],
            size=d["size"],
            characteristic=d["characteristic"],
            flags=None if d["flags"] is None else StructuralFlags.from_dict(d["flags"]),
            measured=None if d["measured"] is None else MuProfile.from_dict(d["measured"]),
            predicted=None if d["predicted"] is None else Prediction(**d["predicted"]),
            matches=dict(d["matches"]),
            config=dict(d["config"]),
            status=d["status"],
            message=d["message"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RingReport":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"ring      {self.spec}  (size {self.size}, characteristic {self.characteristic})"]
        if self.status != "ok":
            lines.append(f"status    {self.status}: {self.message}")
        if self.measured is not None:
            m = self.measured
            lines.append(f"{'':10}{'mu1':>8}{'mu0':>8}{'# maps':>9}{'# periodic':>12}")
            lines.append(f"{'measured':10}{m.mu1:>8}{m.mu0:>8}{m.distinct_maps:>9}{m.muP:>12}")
            if self.predicted is not None:
                p = self.predicted
                lines.append(f"{'predicted':10}{p.mu1:>8}{p.mu0:>8}{p.mu0 + p.mu1 - 1:>9}{p.muP:>12}"
                             f"   [{p.source}]")
            lines.append(f"periodic exponents: {list(m.periodic_exponents)}")
        if self.flags is not None:
            f = self.flags
            lines.append(
                f"flags     commutative={f.commutative} unital={f.unital} |Nil|={len(f.nil_set)}"
                f" index={f.nil_index} |Pot|={len(f.pot_set)} weakly_periodic={f.weakly_periodic}"
                f" J-ring={f.j_ring} nilperiod={f.nilperiod} NI={f.ni_ring}"
            )
        if self.matches:
            verdict = "all match" if self.all_match else "MISMATCH"
            lines.append(f"matches   {self.matches} -> {verdict}")
        return "\n".join(lines)


def analyze_ring(R: FiniteRing, config: Config | None = None, spec: str | None = None) -> RingReport:
    config = config or Config()
    prepare(R, config)
    spec = spec or R.describe()
    base = dict(spec=spec, size=R.size, characteristic=characteristic(R), config=asdict(config))
    predicted = predict(R)
    try:
        measured = mu_profile(R, mu1_bound=config.mu1_bound)
    except Mu1TooLarge as exc:
        return RingReport(flags=None, measured=None, predicted=predicted, matches={},
                          status="partial", message=f"mu1 too large for census: {exc}", **base)
    flags = structural_flags(R, measured)
    matches = {}
    if predicted is not None:
        matches = {
            "mu0": measured.mu0 == predicted.mu0,
            "mu1": measured.mu1 == predicted.mu1,
            "muP": measured.muP == predicted.muP,
        }
    return RingReport(flags=flags, measured=measured, predicted=predicted, matches=matches, **base)


def analyze(spec: str, config: Config | None = None) -> RingReport:
    config = config or Config()
    R = parse_ring_spec(spec, config.max_ring_size)
    return analyze_ring(R, config, spec=spec)


# -- golden tables ------------------------------------------------------------

@dataclass
class TableRow:
    table: str
    row: str
    spec: str
    measured: dict
    predicted: dict

    @property
    def ok(self) -> bool:
        checks = []
        for key, want in self.predicted.items():
            got = self.measured[key]
            if isinstance(want, (list, tuple)):
                lo, hi = want
                checks.append(lo <= got <= hi)
            else:
                checks.append(got == want)
        return all(checks)


@dataclass
class TablesReport:
    rows: list[TableRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def mismatches(self) -> list[TableRow]:
        return [r for r in self.rows if not r.ok]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "ok": self.ok,
            "rows": [dict(asdict(r), ok=r.ok) for r in self.rows],
        }

    def to_text(self) -> str:
        out = []
        for table in ("table1", "table2"):
            rows = [r for r in self.rows if r.table == table]
            if table == "table1":
                out.append("Periodic power map enumerations (measured / predicted)")
                out.append(f"{'ring':28}{'row':16}{'mu1':>14}{'mu0':>10}{'# periodic':>16}  ok")
                for r in rows:
                    m, p = r.measured, r.predicted
                    out.append(
                        f"{r.spec:28}{r.row:16}{_mp(m['mu1'], p['mu1']):>14}"
                        f"{_mp(m['mu0'], p['mu0']):>10}{_mp(m['muP'], p['muP']):>16}  {_ok(r.ok)}"
                    )
            else:
                out.append("")
                out.append("Power map enumerations in Z/nZ (measured / predicted)")
                out.append(f"{'n':>6}  {'row':16}{'lambda(n)':>14}{'E(n)':>10}{'# maps':>14}"
                           f"{'# periodic':>14}  ok")
                for r in rows:
                    m, p = r.measured, r.predicted
                    out.append(
                        f"{r.spec.split(':')[1]:>6}  {r.row:16}{_mp(m['lambda'], p['lambda']):>14}"
                        f"{_mp(m['E'], p['E']):>10}{_mp(m['maps'], p['maps']):>14}"
                        f"{_mp(m['periodic'], p['periodic']):>14}  {_ok(r.ok)}"
                    )
        bad = self.mismatches()
        out.append("")
        out.append("all rows match" if not bad else f"{len(bad)} mismatching row(s): "
                   + ", ".join(r.spec for r in bad))
        return "\n".join(out)


def _mp(measured, predicted) -> str:
    if isinstance(predicted, (list, tuple)):
        predicted = f"[{predicted[0]},{predicted[1]}]"
    return f"{measured}/{predicted}"


def _ok(flag: bool) -> str:
    return "yes" if flag else "NO"


def table2_row(n: int) -> tuple[str, dict]:
    """Row label and the row's own formulas for (lambda, E, maps, periodic)."""
    f = factorize(n).factors
    if len(f) == 1:
        p, k = f[0]
        if k == 1:
            return "prime p", dict(_t2(p - 1, 1, 0))
        if k == 2:
            return "p^2", dict(_t2(p * p - p, 2, p - 1))
        if p == 2:
            return "2^k, k>2", dict(_t2(2 ** (k - 2), k, 2 ** (k - 3) + (k - 1) // 2))
        return "p^k, k>2", dict(_t2(p ** (k - 1) * (p - 1), k, p ** (k - 2) * (p - 1) + (k - 1) // p))
    if all(e == 1 for _, e in f):
        if len(f) == 2 and f[0][0] == 2:
            p = f[1][0]
            return "2p", dict(_t2(p - 1, 1, 0))
        return "squarefree", dict(_t2(lcm(*(p - 1 for p, _ in f)), 1, 0))
    raise ValueError(f"{n} is not covered by any row of the Z/nZ table")


def _t2(lam, E, periodic):
    return {"lambda": lam, "E": E, "maps": lam + E - 1, "periodic": periodic}


TABLE2_MODULI = (
    [2, 3, 5, 7]
    + [6, 10, 14]
    + [15, 21, 30, 35, 105, 210]
    + [4, 9, 25, 49]
    + [8, 16, 32, 64]
    + [27, 81, 243, 729, 125, 625, 3125, 343, 2401]
)

TABLE1_SPECS = (
    ["corbas:2,1,0", "corbas:2,2,0", "corbas:2,2,1", "corbas:3,1,0", "corbas:3,2,0", "corbas:3,2,1"]
    + ["gr:2^1,2", "gr:2^2,2", "gr:2^3,2", "gr:2^2,3", "gr:2^4,2", "gr:3^1,2", "gr:3^2,2",
       "gr:3^3,2", "gr:5^2,2", "gr:7^2,2", "gr:2^2,4", "gr:2^3,3"]
    + ["mat:2^1,2", "mat:3^1,2", "mat:2^2,2", "mat:2^1,3"]
    + ["prod(gf:2^2,nilzero:3)", "prod(gf:3^1,nilzero:2,2)", "prod(gf:2^3,nilzero:4)",
       "prod(zmod:6,nilzero:2)"]
)


def _table1_prediction(R: FiniteRing) -> tuple[str, dict]:
    if isinstance(R, CorbasRing):
        row = "Corbas"
    elif isinstance(R, GaloisRing):
        row = "GR(p^k,d)"
    elif isinstance(R, MatrixRing):
        row = "M_n(F_q)"
    else:
        R1, R2 = R.R1, R.R2  # reduced x nil product
        p1 = mu_profile(R1, periods=False)
        index = mu_profile(R2, periods=False).mu0
        lo, hi = p1.mu1, p1.mu1 + index - 2
        return "R1 x R2", {"mu1": p1.mu1, "mu0": index, "muP": (lo, hi)}
    pred = predict(R)
    return row, {"mu1": pred.mu1, "mu0": pred.mu0, "muP": pred.muP}


def reproduce_tables(config: Config | None = None) -> TablesReport:
    config = config or Config()
    report = TablesReport()
    for spec in TABLE1_SPECS:
        R = prepare(parse_ring_spec(spec, config.max_ring_size), config)
        prof = mu_profile(R, mu1_bound=config.mu1_bound)
        row, pred = _table1_prediction(R)
        meas = {"mu1": prof.mu1, "mu0": prof.mu0, "muP": prof.muP}
        report.rows.append(TableRow("table1", row, spec, meas, pred))
    for n in TABLE2_MODULI:
        if n > config.max_ring_size:
            continue
        spec = f"zmod:{n}"
        prof = mu_profile(parse_ring_spec(spec), mu1_bound=config.mu1_bound)
        row, pred = table2_row(n)
        meas = {"lambda": prof.mu1, "E": prof.mu0, "maps": prof.distinct_maps, "periodic": prof.muP}
        report.rows.append(TableRow("table2", row, spec, meas, pred))
    return report


# -- OEIS A109746 -----------------------------------------------------------------

@dataclass
class OeisEntry:
    n: int
    measured: int
    predicted: int

    @property
    def ok(self) -> bool:
        return self.measured == self.predicted


def oeis_check(limit: int, config: Config | None = None) -> list[OeisEntry]:
    """Distinct power maps of Z/nZ against lambda(n) + E(n) - 1 for n = 2..limit."""
    config = config or Config()
    if limit > config.max_ring_size:
        raise ValueError(f"limit {limit} exceeds max_ring_size {config.max_ring_size}")
    entries = []
    for n in range(2, limit + 1):
        prof = mu_profile(ZMod(n), mu1_bound=config.mu1_bound, periods=False)
        entries.append(OeisEntry(n, prof.distinct_maps, carmichael_lambda(n) + max_exponent(n) - 1))
    return entries


# -- zoo and conjecture scan ------------------------------------------------------

PRODUCT_FACTORS = (
    ["zmod:%d" % n for n in range(2, 17)]
    + ["gf:2^2", "gf:2^3", "gf:3^2", "gr:2^2,2"]
    + ["nilzero:2", "nilzero:3", "nilzero:4", "nilzero:2,2"]
    + ["bell", "corbas:2,1,0", "corbas:2,2,1", "mat:2^1,2"]
)


def _prime_powers(limit: int):
    for p in range(2, limit + 1):
        if factorize(p).factors == ((p, 1),):
            k = 1
            while p**k <= limit:
                yield p, k
                k += 1


def _size_of(spec: str) -> int:
    return parse_ring_spec(spec, max_size=10**12).size


def zoo(max_size: int) -> list[str]:
    """Sorted spec strings of every constructible zoo ring with size <= max_size."""
    specs = {f"zmod:{n}" for n in range(2, max_size + 1)}
    specs.add("bell")
    specs.add("nilzero:1")
    for p, k in _prime_powers(max_size):
        q = p**k
        specs.add(f"gf:{p}^{k}")
        for d in range(2, 64):
            if k >= 2 and q**d <= max_size:
                specs.add(f"gr:{p}^{k},{d}")
        if q * q <= max_size:
            specs.update(f"corbas:{p},{k},{s}" for s in range(k))
        n = 2
        while q ** (n * n) <= max_size:
            specs.add(f"mat:{p}^{k},{n}")
            n += 1
    for m in range(2, min(16, max_size) + 1):
        specs.add(f"nilzero:{m}")
    for m1 in range(2, 9):
        for m2 in range(m1, 9):
            if m1 * m2 <= max_size:
                specs.add(f"nilzero:{m1},{m2}")
    sizes = {s: _size_of(s) for s in PRODUCT_FACTORS}
    for i, a in enumerate(PRODUCT_FACTORS):
        for b in PRODUCT_FACTORS[i:]:
            if sizes[a] * sizes[b] <= max_size:
                specs.add(f"prod({a},{b})")
    return sorted(specs)


@dataclass
class ScanEntry:
    spec: str
    size: int
    commutative: bool
    unital: bool
    nilperiod: bool
    ni_ring: bool
    muP: int


@dataclass
class ScanReport:
    max_size: int
    entries: list[ScanEntry]
    label: str = "enumerated constructible zoo (not a random sample)"

    @property
    def violations(self) -> list[ScanEntry]:
        return [e for e in self.entries if e.nilperiod and not e.ni_ring]

    @property
    def muP_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(e.muP for e in self.entries).items()))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "label": self.label,
            "max_size": self.max_size,
            "rings": len(self.entries),
            "violations": [asdict(e) for e in self.violations],
            "muP_histogram": {str(k): v for k, v in self.muP_histogram.items()},
            "entries": [asdict(e) for e in self.entries],
        }

    def to_text(self) -> str:
        lines = [f"scan of {len(self.entries)} rings with size <= {self.max_size} ({self.label})"]
        counts = Counter((e.nilperiod, e.ni_ring) for e in self.entries)
        for (nilperiod, ni), c in sorted(counts.items()):
            lines.append(f"  nilperiod={nilperiod!s:5} NI={ni!s:5}  {c}")
        v = self.violations
        if v:
            lines.append(f"CONJECTURE VIOLATION: nilperiod but not NI: {[e.spec for e in v]}")
        else:
            lines.append("no ring is nilperiod without being NI (empirical, not a proof)")
        lines.append("muP distribution:")
        for k, c in self.muP_histogram.items():
            lines.append(f"  muP={k:<6} {c}")
        return "\n".join(lines)


def scan_ring(R: FiniteRing, config: Config, spec: str) -> ScanEntry:
    prepare(R, config)
    prof = mu_profile(R, mu1_bound=config.mu1_bound)
    flags = structural_flags(R, prof)
    return ScanEntry(spec, R.size, flags.commutative, flags.unital, flags.nilperiod, flags.ni_ring, prof.muP)


def conjecture_scan(config: Config | None = None, max_size: int = DEFAULT_SCAN_SIZE) -> ScanReport:
    """Flags and muP for every zoo ring up to ``max_size`` (clipped to the config cap)."""
    config = config or Config()
    max_size = min(max_size, config.max_ring_size)
    entries = []
    for spec in zoo(max_size):
        entry = scan_ring(parse_ring_spec(spec), config, spec)
        if entry.nilperiod and not entry.ni_ring:
            log.error("nilperiod ring that is not NI: %s", spec)
        entries.append(entry)
    return ScanReport(max_size, entries)
