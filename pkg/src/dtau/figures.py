"""Matplotlib renderings written next to the delimited reports."""

from __future__ import annotations

from pathlib import Path


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_hahn_figure(rows, path):
    plt = _plt()
    svals = [row.s for row in rows if row.gap is not None]
    gaps = [float(row.gap) for row in rows if row.gap is not None]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
    ax1.plot(svals, gaps, "o-")
    ax1.set_xlabel("s")
    ax1.set_ylabel("P(all particles <= s)")
    ax1.set_title("gap probability")
    qs = [(row.s, float(row.q), float(row.r)) for row in rows if row.q is not None]
    if qs:
        ax2.plot([t[0] for t in qs], [t[1] for t in qs], "o-", label="q")
        ax2.plot([t[0] for t in qs], [t[2] for t in qs], "s-", label="r")
        ax2.legend()
    ax2.set_xlabel("s")
    ax2.set_title("orbit coordinates")
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_limit_figure(rows, path):
    plt = _plt()
    eps = [float(r.eps) for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.6))
    ax.loglog(eps, [max(r.error, 1e-300) for r in rows], "o-", label="curvature error")
    ax.loglog(eps, [max(r.lim1_residual, 1e-300) for r in rows], "s-", label="expansion residual")
    ax.loglog(eps, [max(r.lim2_residual, 1e-300) for r in rows], "^-", label="difference-quotient residual")
    guide = [rows[0].error * (e / eps[0]) for e in eps]
    ax.loglog(eps, guide, "k--", alpha=0.5, label="slope 1")
    ax.set_xlabel("epsilon")
    ax.invert_xaxis()
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_suite_figure(summary, path):
    plt = _plt()
    names = sorted(summary["suites"])
    passed = [summary["suites"][n]["passed"] for n in names]
    total = [summary["suites"][n]["total"] for n in names]
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.bar(names, total, color="#dddddd", label="total")
    ax.bar(names, passed, color="#33aa55", label="passed")
    ax.set_ylabel("checks")
    ax.legend()
    plt.setp(ax.get_xticklabels(), rotation=30, ha="right", fontsize=8)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
