"""Experiment reports: provenance metadata, record collections, CSV/JSON IO.

The CSV schema is a bit-exact contract: header row
``label,T,U,l,n,lhs,rhs,ratio,est_error``, floats printed with 17 significant
digits ('.' decimal separator), '\\n' line endings, records in run order.  CSV
carries the record rows only (deterministic given config + cache); the JSON
format additionally round-trips the metadata and the structured record types.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from .formulas import GeoMeanReport, MeanValueWitness, RatioRecord, RhGapRow
from .ladder import SetPropertyReport

__all__ = ["ReportMeta", "ExperimentReport", "config_hash", "FORMAT_VERSION"]

FORMAT_VERSION = 1


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def config_hash(config: dict) -> str:
    """Stable hash of a flat key/value configuration mapping."""
    lines = "".join(f"{k}={config[k]}\n" for k in sorted(config))
    return hashlib.sha256(lines.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class ReportMeta:
    tool_version: str
    config_hash: str
    created_utc: str
    ladder_cache_key: str = ""
    format_version: int = FORMAT_VERSION

    @classmethod
    def create(cls, tool_version, config, ladder_cache_key=""):
        return cls(tool_version=tool_version, config_hash=config_hash(config),
                   created_utc=datetime.now(timezone.utc).isoformat(),
                   ladder_cache_key=ladder_cache_key)


_RECORD_TYPES = {
    "ratio": RatioRecord,
    "witness": MeanValueWitness,
    "geomean": GeoMeanReport,
    "set-properties": SetPropertyReport,
    "rh-gap": RhGapRow,
}
_TYPE_NAMES = {cls: name for name, cls in _RECORD_TYPES.items()}


def _record_to_dict(rec):
    name = _TYPE_NAMES[type(rec)]
    d = asdict(rec)
    # tuples are JSON lists; normalize nested tuples for round-trip equality
    return {"type": name, **d}


def _normalize(value):
    if isinstance(value, list):
        return tuple(_normalize(v) for v in value)
    return value


def _record_from_dict(d):
    d = dict(d)
    cls = _RECORD_TYPES[d.pop("type")]
    kwargs = {k: _normalize(v) for k, v in d.items()}
    return cls(**kwargs)


def _ratio_rows(rec):
    """Flatten any record type into rows of the fixed CSV schema."""
    if isinstance(rec, RatioRecord):
        return [rec]
    if isinstance(rec, MeanValueWitness):
        label = f"{'cor1' if rec.side.endswith('3.3') else 'cor2'}-witness-l{rec.l}"
        return [RatioRecord.build(label, rec.t_witness, 0.0, rec.l, 0,
                                  rec.attained, rec.target, rec.residual)]
    if isinstance(rec, GeoMeanReport):
        gm = rec.g_low / rec.g_high
        rows = [RatioRecord.build(f"geomean-l{rec.l}", 0.0, 0.0, rec.l, 0,
                                  gm, rec.omega, 0.0)]
        rows.append(RatioRecord.build(f"amgm-min-margin-l{rec.l}", 0.0, 0.0,
                                      rec.l, 0, min(rec.am_gm_margins), 0.0, 0.0))
        return rows
    if isinstance(rec, SetPropertyReport):
        rows = []
        for k, L in enumerate(rec.lengths):
            if k == 0:
                continue
            rows.append(RatioRecord.build(f"set-length-k{k}", rec.T, rec.U, k,
                                          rec.n, L, rec.length_bound, 0.0))
        for k, g in enumerate(rec.gaps):
            rows.append(RatioRecord.build(f"set-gap-k{k}", rec.T, rec.U, k,
                                          rec.n, g, rec.gap_bound, 0.0))
            rows.append(RatioRecord.build(f"set-dist-k{k}", rec.T, rec.U, k,
                                          rec.n, g, rec.dist_bound, 0.0))
        return rows
    if isinstance(rec, RhGapRow):
        return [RatioRecord.build(f"rh-gap-k{rec.k}", 0.0, 0.0, rec.k, 0,
                                  rec.gap, rec.envelope, 0.0)]
    raise TypeError(f"unknown record type {type(rec)!r}")


@dataclass
class ExperimentReport:
    """Serializable collection of verification records with provenance."""

    meta: ReportMeta
    records: list = field(default_factory=list)

    def add(self, rec_or_list):
        if isinstance(rec_or_list, (list, tuple)):
            self.records.extend(rec_or_list)
        else:
            self.records.append(rec_or_list)

    # --- JSON (lossless) -------------------------------------------------
    def to_json(self) -> str:
        payload = {
            "meta": asdict(self.meta),
            "records": [_record_to_dict(r) for r in self.records],
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        payload = json.loads(text)
        meta = ReportMeta(**payload["meta"])
        records = [_record_from_dict(d) for d in payload["records"]]
        return cls(meta=meta, records=records)

    # --- CSV (records only, bit-exact contract) ---------------------------
    CSV_HEADER = "label,T,U,l,n,lhs,rhs,ratio,est_error"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for rec in self.records:
            for row in _ratio_rows(rec):
                lines.append(",".join([
                    row.label, _fmt(row.T), _fmt(row.U), str(row.l), str(row.n),
                    _fmt(row.lhs), _fmt(row.rhs), _fmt(row.ratio),
                    _fmt(row.est_error)]))
        return "\n".join(lines) + "\n"

    @classmethod
    def rows_from_csv(cls, text: str):
        lines = [ln for ln in text.split("\n") if ln]
        if lines[0] != cls.CSV_HEADER:
            raise ValueError("unexpected CSV header")
        rows = []
        for ln in lines[1:]:
            parts = ln.split(",")
            rows.append(RatioRecord(
                label=parts[0], T=float(parts[1]), U=float(parts[2]),
                l=int(parts[3]), n=int(parts[4]), lhs=float(parts[5]),
                rhs=float(parts[6]), ratio=float(parts[7]),
                est_error=float(parts[8])))
        return rows

    def ratio_rows(self):
        rows = []
        for rec in self.records:
            rows.extend(_ratio_rows(rec))
        return rows
