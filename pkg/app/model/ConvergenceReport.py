from dataclasses import dataclass, field

import pandas as pd


@dataclass
class ConvergenceReport:
    """
    Résultat de l'étude de limite continue : une ligne (n, <[X~, P~]>, |<[X~, P~]> - i|) par ordre n.
    """
    rows: list = field(default_factory=list)
    monotone_flag: bool = True
    width_rule: str = "balanced"
    negative_control: list = field(default_factory=list)

    @property
    def final_error(self):
        return self.rows[-1][2] if self.rows else float("nan")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "n": [row[0] for row in self.rows],
            "re": [row[1].real for row in self.rows],
            "im": [row[1].imag for row in self.rows],
            "error": [row[2] for row in self.rows],
        })

    def to_dict(self) -> dict:
        return {
            "rows": [{"n": n, "expectation": [value.real, value.imag], "error": error}
                     for n, value, error in self.rows],
            "monotone_flag": self.monotone_flag,
            "width_rule": self.width_rule,
            "final_error": self.final_error,
            "negative_control": [{"n": n, "expectation": [value.real, value.imag]}
                                 for n, value in self.negative_control],
        }
