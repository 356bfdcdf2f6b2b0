"""Stdout rendering shared by the commands. Every line is a pure function of the result."""

from __future__ import annotations

from multiparty_qhe.protocol.scenario import ScenarioResult


def format_histogram(histogram: dict[str, float]) -> list[str]:
    return [f"{label} {histogram[label]:.4f}" for label in sorted(histogram)]


def verdict_line(verified: bool) -> str:
    return "verification: passed" if verified else "verification: failed"


def render_run(result: ScenarioResult) -> list[str]:
    lines = []
    for client, histogram in sorted(result.histograms.items()):
        servers = ",".join(str(j) for j in result.active_servers[client])
        lines.append(f"client {client} servers {servers}")
        lines.extend(format_histogram(histogram))
    if result.audit is not None:
        status = "passed" if result.audit.passed else "failed"
        lines.append(
            f"audit: {status} ciphertexts={result.audit.checked}"
            f" max_deviation={result.audit.max_deviation:.3e}"
        )
    lines.append(verdict_line(result.verified))
    return lines


def render_verification(result: ScenarioResult) -> list[str]:
    lines = []
    for client in sorted(result.secrets):
        reconstructs = result.reconstructed[client] == result.secrets[client]
        lines.append(
            f"client {client} shares={len(result.shares[client])}"
            f" reconstruction={'ok' if reconstructs else 'mismatch'}"
        )
    lines.append(verdict_line(result.verified))
    return lines
