"""
Atomic writes for result files.

AtomicFile writes to "name~" and moves it into place on success, so an
interrupted sweep never leaves a half-written CSV where a plotting script
would pick it up.
"""

from contextlib import ExitStack
from pathlib import Path


class AtomicFile:
    """Text file whose writes only become visible when the with-block succeeds."""

    def __init__(self, path: Path | str, mode: str = "w"):
        self.path = Path(path)
        self.mode = mode
        self._f = None
        self._stack = ExitStack()
        self._temp_path = None

    def __enter__(self):
        if "w" in self.mode or "+" in self.mode:
            self._temp_path = self.path.with_name(f"{self.path.name}~")
            self._f = self._stack.enter_context(self._temp_path.open(self.mode, newline="\n"))
        else:
            self._f = self._stack.enter_context(self.path.open(self.mode, newline="\n"))
        return self

    def __exit__(self, *args):
        result = self._stack.__exit__(*args)

        if self._temp_path and args[0] is None:
            self._temp_path.replace(self.path)
        elif self._temp_path and self._temp_path.exists():
            self._temp_path.unlink()

        self._temp_path = None
        self._f = None
        return result

    def __getattr__(self, name):
        """Delegate to the open file object."""
        if self._f is None:
            raise IOError("File not opened - use within 'with' statement")
        return getattr(self._f, name)

    def __iter__(self):
        if self._f is None:
            raise IOError("File not opened - use within 'with' statement")
        return iter(self._f)
