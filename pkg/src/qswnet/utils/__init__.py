from .config import Config
from .io import create_folder, read_table, write_table
from .misc import parse_grid, spawn_rng

__all__ = ["Config", "create_folder", "parse_grid", "read_table", "spawn_rng", "write_table"]
