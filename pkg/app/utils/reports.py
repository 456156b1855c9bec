import json
import logging
import os
import sys

import numpy as np
import pandas as pd

from app.model.AlgebraElement import AlgebraElement
from app.model.AlgebraParams import AlgebraParams
from app.model.StateVector import StateVector
from app.params import CONVENTIONS, CSV_FLOAT_FORMAT, OUTPUT_DIR_ENV, VERSION
from app.utils.errors import DimensionError

log = logging.getLogger(__name__)


def complex_pair(z):
    z = complex(z)
    return [z.real, z.imag]


def element_to_dict(A: AlgebraElement) -> dict:
    """{"n": n, "coeffs": [[re, im], ...]} en ordre (a, b) ligne par ligne."""
    flat = A.coeffs.ravel()
    return {"n": A.params.n, "coeffs": [[float(z.real), float(z.imag)] for z in flat]}


def element_from_dict(data: dict) -> AlgebraElement:
    params = AlgebraParams(int(data["n"]))
    pairs = np.asarray(data["coeffs"], dtype=float)
    if pairs.shape != (params.n ** 2, 2):
        raise DimensionError(f"Expected {params.n ** 2} coefficient pairs, got shape {pairs.shape}")
    coeffs = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(params.n, params.n)
    return AlgebraElement(params, coeffs)


def state_to_dict(psi: StateVector) -> dict:
    return {"n": psi.params.n, "basis": psi.basis,
            "amps": [[float(z.real), float(z.imag)] for z in psi.amplitudes]}


def state_from_dict(data: dict) -> StateVector:
    params = AlgebraParams(int(data["n"]))
    pairs = np.asarray(data["amps"], dtype=float)
    if pairs.shape != (params.n, 2):
        raise DimensionError(f"Expected {params.n} amplitude pairs, got shape {pairs.shape}")
    return StateVector(params, pairs[:, 0] + 1j * pairs[:, 1], data.get("basis", "position"))


def metadata(cfg) -> dict:
    """En-tête commun à tous les rapports : commande, ordre(s), graine, version et conventions figées."""
    header = {"command": cfg.command, "seed": cfg.seed, "version": VERSION, "conventions": dict(CONVENTIONS)}
    if cfg.n_list is not None:
        header["n_list"] = list(cfg.n_list)
    if cfg.n is not None:
        header["n"] = cfg.n
    return header


def to_jsonable(obj):
    """Conversion récursive : complexes en paires [re, im], tableaux numpy en listes, DataFrames en lignes."""
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, pd.DataFrame):
        return [to_jsonable(row) for row in obj.to_dict(orient="records")]
    if isinstance(obj, AlgebraElement):
        return element_to_dict(obj)
    if isinstance(obj, StateVector):
        return state_to_dict(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return complex_pair(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def render_json(header: dict, payload: dict) -> str:
    document = {"metadata": to_jsonable(header), "report": to_jsonable(payload)}
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def render_csv(header: dict, frame: pd.DataFrame) -> str:
    """
    CSV précédé de lignes de commentaire "# clé=valeur" (lisible avec pandas.read_csv(comment="#")).
    """
    lines = []
    for key, value in sorted(header.items()):
        if isinstance(value, dict):
            value = ",".join(f"{k}:{v}" for k, v in sorted(value.items()))
        elif isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        lines.append(f"# {key}={value}\n")
    body = frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return "".join(lines) + body


def resolve_output_path(output_path, command: str, output_format: str):
    """
    Chemin explicite s'il est donné, sinon fichier <command>.<format> dans $WEYL_OUTPUT_DIR,
    sinon None (sortie standard).
    """
    if output_path:
        return output_path
    directory = os.environ.get(OUTPUT_DIR_ENV)
    if directory:
        return os.path.join(directory, f"{command}.{output_format}")
    return None


def write_report(text: str, path=None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(text)
    log.info("Report written to %s", path)
