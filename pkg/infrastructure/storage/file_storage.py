# infrastructure/storage/file_storage.py
import logging
import os
from typing import Optional

from core.errors import InternalError, NotFoundError, ValidationError

logger = logging.getLogger(__name__)


class FileStorage:
    """Reads input artifacts and writes result files relative to a base directory."""

    def __init__(self, base_dir: str = "."):
        self.base_dir = base_dir

    def resolve(self, path: str) -> str:
        return path if os.path.isabs(path) else os.path.join(self.base_dir, path)

    def read_text(self, path: str) -> str:
        """Return the file's contents; a missing file is an input error naming the path."""
        try:
            if not path or not isinstance(path, str):
                raise ValueError("File path must be a non-empty string")
            full_path = self.resolve(path)
            if not os.path.isfile(full_path):
                raise NotFoundError(path)
            with open(full_path, "r", encoding="utf-8") as handle:
                content = handle.read()
            logger.debug(f"Read {len(content)} characters from {full_path}")
            return content
        except NotFoundError:
            raise
        except ValueError as ve:
            logger.error(f"Invalid file path: {str(ve)}")
            raise ValidationError(f"Invalid file path: {str(ve)}")
        except Exception as e:
            logger.error(f"Failed to read file: {str(e)}", exc_info=True)
            raise InternalError(f"Failed to read file {path}: {str(e)}")

    def write_text(self, path: str, content: str, directory: Optional[str] = None) -> str:
        """Write ``content`` and return the full path, creating parent directories as needed."""
        try:
            if not path or not isinstance(path, str):
                raise ValueError("File path must be a non-empty string")
            full_path = self.resolve(os.path.join(directory, path) if directory else path)
            parent = os.path.dirname(full_path)
            if parent and not os.path.exists(parent):
                os.makedirs(parent)
                logger.info(f"Created output directory: {parent}")
            with open(full_path, "w", encoding="utf-8") as handle:
                handle.write(content)
            logger.info(f"File written: {full_path}")
            return full_path
        except ValueError as ve:
            logger.error(f"Invalid file path: {str(ve)}")
            raise ValidationError(f"Invalid file path: {str(ve)}")
        except Exception as e:
            logger.error(f"Failed to write file: {str(e)}", exc_info=True)
            raise InternalError(f"Failed to write file {path}: {str(e)}")


file_storage = FileStorage()
