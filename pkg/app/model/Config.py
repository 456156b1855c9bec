from dataclasses import dataclass
from typing import Optional, Tuple

from app.params import BAND_RADIUS

COMMANDS = ("verify", "commutator", "uncertainty", "limit", "explode", "wave", "duality-audit")
OUTPUT_FORMATS = ("json", "csv")


class Config():
    def __init__(self) -> None:
        # Algebra
        self.n = 4
        self.n_list = (32, 64, 128, 256)

        # Sampling
        self.seed = 7
        self.trials = 1000

        # Wave equation
        self.alpha = 1.0
        self.dt = 0.05
        self.steps = 10000
        self.sample_every = 1
        self.mode = 1  # Fourier mode used by `wave` for the dispersion check
        self.wave_n = 64

        # Locality
        self.band_radius = BAND_RADIUS
        self.explode_n = 16

        # Continuum limit
        self.width_rule = "balanced"
        self.link_n_list = (32, 64, 128)
        self.link_momentum_shift = 8
        self.link_width_fraction = 1 / 12


config = Config()


@dataclass(frozen=True)
class RunConfig:
    """
    Une invocation de la ligne de commande : la graine détermine toutes les sorties aléatoires.
    """
    command: str
    n: Optional[int] = None
    n_list: Optional[Tuple[int, ...]] = None
    seed: int = config.seed
    trials: int = config.trials
    output_format: str = "json"
    output_path: Optional[str] = None
    alpha: float = config.alpha
    dt: float = config.dt
    steps: int = config.steps
    sample_every: int = config.sample_every
    mode: int = config.mode

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command '{self.command}', expected one of {COMMANDS}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format '{self.output_format}', expected one of {OUTPUT_FORMATS}")
