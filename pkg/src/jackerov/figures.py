"""File-only matplotlib renderings for limit-shape reports."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def save_profile_figure(report, path, dpi=150):
    """Overlay sampled rescaled profiles on the limit curve."""
    curves = report["curves"]
    fig, ax = plt.subplots(figsize=(7, 5))
    for k, ys in enumerate(curves["profiles"]):
        ax.plot(curves["x"], ys, lw=0.9, alpha=0.8,
                label="sample %d" % k if k < 3 else None)
    ax.plot(curves["x"], curves["omega"], "k--", lw=1.6, label="limit curve")
    ax.set_xlabel("u")
    ax.set_ylabel("profile")
    ax.set_title("rescaled profiles, n=%d, alpha=%s" % (report["n"], report["alpha"]))
    ax.legend(loc="upper center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path


def save_histogram_figure(report, path, dpi=150):
    """Histogram of per-sample sup distances to the limit curve."""
    dists = [rec["sup_distance"] for rec in report["records"]]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(dists, bins=min(30, max(5, len(dists) // 5)), color="#4878a8",
            edgecolor="white")
    ax.axvline(report["summary"]["sup_distance"]["median"], color="k",
               ls="--", lw=1, label="median")
    ax.set_xlabel("sup distance to limit curve")
    ax.set_ylabel("samples")
    ax.set_title("n=%d, alpha=%s, %d samples"
                 % (report["n"], report["alpha"], report["samples"]))
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
