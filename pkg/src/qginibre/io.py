"""CSV and JSON writers.  Floats are written with 17 significant digits."""

import csv
import json

import numpy as np

MATRIX_QUAT_HEADER = ("row", "col", "w", "x", "y", "z")
MATRIX_CPLX_HEADER = ("row", "col", "re", "im")
EIGS_HEADER = ("replica", "index", "re", "im")
TRACE_HEADER = ("step", "point_index", "re", "im", "accepted")
POTENTIAL_HEADER = ("re", "im", "U_closed", "U_quad", "abs_err")
CLASSES_HEADER = ("re", "im", "w", "x", "y", "z", "canon_re", "canon_im", "weight")


def fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, np.array([[float(v) for v in row] for row in reader])


def write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, default=_json_default)
        fh.write("\n")


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dump_quaternion_matrix(path, a):
    n = a.n
    write_csv(path, MATRIX_QUAT_HEADER,
              ((i, j, *a.data[i, j]) for i in range(n) for j in range(n)))


def dump_complex_matrix(path, m):
    m = getattr(m, "matrix", m)
    k = m.shape[0]
    write_csv(path, MATRIX_CPLX_HEADER,
              ((i, j, m[i, j].real, m[i, j].imag) for i in range(k) for j in range(k)))


def load_quaternion_matrix(path):
    from .matrix_model import QuaternionMatrix
    _, rows = read_csv(path)
    n = int(rows[:, 0].max()) + 1
    data = np.zeros((n, n, 4))
    data[rows[:, 0].astype(int), rows[:, 1].astype(int)] = rows[:, 2:]
    return QuaternionMatrix(data)
