"""Monte-Carlo sweep over element counts and architectures, with CSV output.

Every (architecture, element count, trial) cell gets its own derived seed, so
the sweep is a pure function of the config: identical configs give
byte-identical CSV regardless of how many workers execute the cells.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .channel_model import build_geometry, generate_channels
from .config import SimConfig, format_config
from .errors import SweepError
from .link_metrics import RfConfig, link_report
from .phase_optimizer import optimize
from .ris_core import Architecture

logger = logging.getLogger(__name__)

CSV_HEADER = "arch,elements,trial,h_eff_mag,snr_db,rate_bps,ee_bits_per_joule,seed"

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    """One splitmix64 output step; decorrelates the run seed from the packed key."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _arch_code(arch: Architecture) -> int:
    if arch.kind == "sc":
        return 0
    if arch.kind == "fc":
        return 1
    return 2 + arch.groups


def derive_trial_seed(run_seed: int, arch: Architecture, elements: int, trial: int) -> int:
    """Deterministic per-cell seed, injective over (arch, elements, trial).

    (arch code, elements, trial) are bit-packed into 17+16+31 = 64 bits and
    XORed with splitmix64(run seed), so for a fixed run seed no two cells
    within the documented bounds ever share a channel stream.
    """
    if not 1 <= elements <= 0xFFFF:
        raise ValueError(f"element count must be in [1, 65535], got {elements}")
    if not 0 <= trial < 2**31:
        raise ValueError(f"trial index must be in [0, 2^31), got {trial}")
    code = _arch_code(arch)
    if code >= 2**17:
        raise ValueError(f"architecture code {code} out of range")
    packed = (code << 47) | (elements << 31) | trial
    return packed ^ _splitmix64(run_seed & _MASK64)


@dataclass(frozen=True)
class SweepRecord:
    """One output row: a single trial, or a per-cell 'mean'/'stderr' aggregate."""

    arch: str
    elements: int
    trial: int | str
    h_eff_mag: float
    snr_db: float
    rate_bps: float
    ee_bits_per_joule: float
    seed: int


def _run_cell(cfg: SimConfig, label: str, arch: Architecture, elements: int,
              geom, rf: RfConfig) -> list[SweepRecord]:
    records = []
    stats = np.empty((cfg.trials, 4))
    for trial in range(cfg.trials):
        trial_seed = derive_trial_seed(cfg.seed, arch, elements, trial)
        try:
            ch = generate_channels(
                geom, cfg.fading_spec, elements, trial_seed,
                tx_gain_dbi=cfg.tx_gain_dbi,
                ris_element_gain_dbi=cfg.ris_element_gain_dbi,
                rx_gain_dbi=cfg.rx_gain_dbi,
                direct_blocked=cfg.direct_link == "blocked",
            )
            result = optimize(ch, arch)
            report = link_report(result.objective, rf)
        except Exception as exc:
            raise SweepError(f"arch={label} elements={elements} trial={trial}: {exc}") from exc
        stats[trial] = (report.h_eff_mag, report.snr_db, report.rate_bps,
                        report.ee_bits_per_joule)
        records.append(SweepRecord(label, elements, trial, report.h_eff_mag,
                                   report.snr_db, report.rate_bps,
                                   report.ee_bits_per_joule, trial_seed))
    mean = stats.mean(axis=0)
    if cfg.trials > 1:
        stderr = stats.std(axis=0, ddof=1) / math.sqrt(cfg.trials)
    else:
        stderr = np.zeros(4)
    records.append(SweepRecord(label, elements, "mean", *map(float, mean), cfg.seed))
    records.append(SweepRecord(label, elements, "stderr", *map(float, stderr), cfg.seed))
    return records


def run_sweep(cfg: SimConfig, workers: int = 1) -> list[SweepRecord]:
    """Run the full sweep and return records in canonical order.

    Canonical order is architecture label (lexicographic), then element
    count, then trial index, with the 'mean' and 'stderr' aggregates after
    each cell's trials. Cells may run on several workers; the output does
    not depend on the worker count. Group-connected cells whose group count
    does not divide the element count are skipped with a warning.
    """
    geom = build_geometry(cfg)
    rf = RfConfig(cfg.tx_power_dbm, cfg.bandwidth_hz, cfg.noise_psd_dbm_hz,
                  cfg.static_power_w)
    cells = []
    for label in sorted(cfg.architectures):
        arch = Architecture.from_label(label)
        for elements in sorted(cfg.elements_sweep):
            if arch.kind == "gc" and elements % arch.groups:
                logger.warning(
                    "skipping arch=%s elements=%d: group count %d does not divide element count",
                    label, elements, arch.groups,
                )
                continue
            cells.append((label, arch, elements))

    def job(cell):
        label, arch, elements = cell
        return _run_cell(cfg, label, arch, elements, geom, rf)

    if workers <= 1:
        per_cell = [job(cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_cell = list(pool.map(job, cells))
    return [record for cell_records in per_cell for record in cell_records]


def _format_float(value: float) -> str:
    # 17 significant digits: round-trips any finite double exactly
    return format(float(value), ".17g")


def _metadata_path(destination: Path) -> Path:
    if destination.suffix:
        return destination.with_suffix(".meta.txt")
    return destination.with_name(destination.name + ".meta.txt")


def emit_csv(records: list[SweepRecord], destination, cfg: SimConfig) -> None:
    """Write records as CSV plus a metadata sidecar next to it.

    The sidecar records the resolved config, the software version and the
    noise-density interpretation; only its first line (the timestamp) varies
    between identical runs.
    """
    destination = Path(destination)
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join((
            r.arch,
            str(r.elements),
            str(r.trial),
            _format_float(r.h_eff_mag),
            _format_float(r.snr_db),
            _format_float(r.rate_bps),
            _format_float(r.ee_bits_per_joule),
            str(r.seed),
        )))
    destination.write_text("\n".join(lines) + "\n", encoding="utf-8")

    meta = [
        f"generated_at = {datetime.now(timezone.utc).isoformat()}",
        f"software = ris-ntn-sim {__version__}",
        f"records = {len(records)}",
        "noise_psd_note = noise_psd_dbm_hz is a power spectral density in dBm/Hz; "
        "total noise power is noise_psd_dbm_hz + 10*log10(bandwidth_hz)",
        "",
        "[resolved config]",
        format_config(cfg),
    ]
    _metadata_path(destination).write_text("\n".join(meta) + "\n", encoding="utf-8")
