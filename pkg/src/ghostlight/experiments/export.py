"""CSV and gnuplot output."""

import os

SCAN_HEADER = "u2_mm,gamma_re,gamma_im,gamma_sq,gamma_sq_norm,I1,I2,G2"
SWEEP_HEADER = "value,V,Q,error"


def fmt(x):
    return "" if x is None else f"{float(x):.17g}"


def scan_csv(scan):
    lines = [SCAN_HEADER]
    gsq, norm = scan.gamma_sq, scan.gamma_sq_norm
    for i, u in enumerate(scan.u2_grid):
        g = scan.gamma[i]
        row = (u, g.real, g.imag, gsq[i], norm[i], scan.I1_ref, scan.I2[i], scan.g2[i])
        lines.append(",".join(fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _csv_text(text):
    # errors are free text; quote them so commas survive
    if not text:
        return ""
    return '"' + text.replace('"', '""') + '"'


def sweep_csv(rows):
    lines = [SWEEP_HEADER]
    for r in rows:
        lines.append(f"{fmt(r.value)},{fmt(r.V)},{fmt(r.Q)},{_csv_text(r.error)}")
    return "\n".join(lines) + "\n"


def write_text(path, text):
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def series_path(out, series_parameter, value):
    stem, ext = os.path.splitext(out)
    key = series_parameter.split(".")[-1]
    return f"{stem}_{key}_{value:g}{ext or '.csv'}"


def gnuplot_scan(csv_path, title):
    name = os.path.basename(csv_path)
    return (
        "set datafile separator ','\n"
        f"set title '{title}'\n"
        "set xlabel 'u_2 (mm)'\n"
        "set ylabel 'normalized |{/Symbol G}(0,u_2)|^2'\n"
        "set key off\n"
        f"plot '{name}' using 1:5 every ::1 with lines lw 2\n"
    )


def gnuplot_sweep(csv_paths, parameter, labels):
    plots = []
    for path, label in zip(csv_paths, labels):
        name = os.path.basename(path)
        plots.append(f"'{name}' using 1:2 every ::1 with linespoints title 'V {label}' axes x1y1")
        plots.append(f"'{name}' using 1:3 every ::1 with linespoints title 'Q {label}' axes x1y2")
    return (
        "set datafile separator ','\n"
        "set logscale x\n"
        f"set xlabel '{parameter}'\n"
        "set ylabel 'V'\n"
        "set y2label 'Q'\n"
        "set ytics nomirror\n"
        "set y2tics\n"
        "plot " + ", \\\n     ".join(plots) + "\n"
    )


def plot_path(csv_path):
    return os.path.splitext(csv_path)[0] + ".gp"
