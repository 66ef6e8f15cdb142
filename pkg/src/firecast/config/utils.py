"""Path helpers shared by the config, map, model and dataset loaders."""

from pathlib import Path


def resolve_path(
    file_path: str | Path,
    must_exist: bool = True,
    error_prefix: str = "File",
) -> Path:
    """Absolute path of ``file_path``, relative paths taken from the working directory.

    Args:
        file_path: Relative or absolute path.
        must_exist: Require an existing regular file.
        error_prefix: Names the file in errors, e.g. "Map file".

    Raises:
        FileNotFoundError: If ``must_exist`` and nothing exists at the path.
        IsADirectoryError: If ``must_exist`` and the path is a directory.
    """
    path = Path(file_path).expanduser()
    resolved = path.resolve()

    if must_exist:
        if not resolved.exists():
            raise FileNotFoundError(f"{error_prefix} not found - Specified: '{file_path}', Resolved: '{resolved}'")
        if resolved.is_dir():
            raise IsADirectoryError(f"{error_prefix} '{file_path}' is a directory")
    return resolved


def visible_files(directory: str | Path) -> list[Path]:
    """Regular files in ``directory`` sorted by name, dotfiles skipped."""
    return sorted(
        (p for p in Path(directory).iterdir() if p.is_file() and not p.name.startswith(".")),
        key=lambda p: p.name,
    )
