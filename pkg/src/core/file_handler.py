"""File handling utilities for instance, config and CSV files."""

import json
from pathlib import Path
from typing import Any, Dict

import pandas as pd

from config.settings import CSV_COMMENT_PREFIX, CSV_FLOAT_FORMAT
from src.models.errors import InstanceFormatError
from src.utils.logger import get_logger

logger = get_logger(__name__)


class FileHandler:
    """Handles file I/O for JSON documents and provenance-stamped CSV tables."""

    def read_json(self, file_path: Path) -> Dict[str, Any]:
        """
        Read a JSON document.

        Args:
            file_path: Path to file

        Returns:
            Parsed document

        Raises:
            FileNotFoundError: the file does not exist
            InstanceFormatError: the file is not valid JSON
        """
        if not file_path.exists():
            raise FileNotFoundError(f"File not found: {file_path}")

        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise InstanceFormatError("document", f"{file_path.name}: {e}") from e

    def write_json(self, file_path: Path, data: Dict[str, Any]) -> None:
        """
        Write a JSON document.

        Args:
            file_path: Path to output file
            data: Serializable document
        """
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=1)
            f.write("\n")
        logger.debug(f"Wrote JSON: {file_path}")

    def write_csv(self, file_path: Path, frame: pd.DataFrame, provenance: Dict[str, Any]) -> Path:
        """
        Write a table preceded by a comment header embedding its provenance.

        Args:
            file_path: Path to output file
            frame: Table to write
            provenance: Config and seed the table was produced from

        Returns:
            The written path
        """
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            header = json.dumps(provenance, sort_keys=True)
            with open(file_path, 'w', encoding='utf-8', newline='') as f:
                f.write(f"{CSV_COMMENT_PREFIX}provenance: {header}\n")
                frame.to_csv(f, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
            logger.debug(f"Wrote CSV: {file_path}")
            return file_path
        except Exception as e:
            logger.error(f"Error writing file {file_path}: {e}")
            raise

    def read_csv(self, file_path: Path) -> pd.DataFrame:
        """Read a table written by write_csv, skipping the provenance header."""
        return pd.read_csv(file_path, comment=CSV_COMMENT_PREFIX.strip())

    def read_provenance(self, file_path: Path) -> Dict[str, Any]:
        """Return the provenance header of a CSV written by write_csv."""
        with open(file_path, 'r', encoding='utf-8') as f:
            first = f.readline()
        prefix = f"{CSV_COMMENT_PREFIX}provenance: "
        if not first.startswith(prefix):
            raise InstanceFormatError("provenance", f"{file_path.name} has no provenance header")
        return json.loads(first[len(prefix):])

