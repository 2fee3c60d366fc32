"""
Class that handles the IO of the generated reports.

author: Aaron Gobeyn
date: 01-10-2024
"""

import csv
import json
import os
from io import TextIOWrapper

from .utils import finite_or_none


class ReportWriter(object):
    """This is a class which handles all the IO for the generated reports. Reports are
    either a single JSON document or a CSV table; the output is a pure function of the
    payload so identical payloads give byte-identical files.

    :param filehandle: Handle of the file we want to write to. This is assumed to be
        the return value of the `open` method, or `sys.stdout`.
    :type filehandle: TextIOWrapper
    """

    def __init__(self, filehandle: TextIOWrapper):
        """Constructor method"""
        # Handle to the report file to which we can write.
        self.__filehandle = filehandle
        # Extract file path from handle, stdout has a pseudo name.
        self.__filepath = getattr(self.__filehandle, "name", "<stream>")
        # Number of documents written so far, a JSON report holds exactly one.
        self.__documents: int = 0

    def write(self, text: str) -> None:
        """API for writing `text` to the private file handle of the class.

        :param text: Text to write
        :type text: str
        """
        try:
            self.__filehandle.write(text)
        except OSError as exc:
            raise IOError(f"Unable to write contents to {self.__filepath}.") from exc

    @staticmethod
    def create(filepath: str) -> None:
        """Prepare the `--out` target of a report: missing parent directories are made
        and an empty report file is left in place. An existing report is not truncated
        here, that happens when it is opened for writing.

        :param filepath: Report path given on the command line.
        :type filepath: str
        """
        directory = os.path.dirname(filepath)
        if directory:
            os.makedirs(directory, exist_ok=True)
        if not os.path.exists(filepath):
            open(filepath, "a", encoding="utf-8").close()

    @staticmethod
    def sanitize(value):
        """Recursively replace non-finite floats by `None` and numpy scalars by their
        Python counterparts so that `json.dumps` never emits `Infinity` or `NaN`.

        :param value: Payload to sanitize.
        :type value: Any JSON compatible structure
        """
        match value:
            case bool() | None | str():
                return value
            case dict():
                return {str(k): ReportWriter.sanitize(v) for k, v in value.items()}
            case list() | tuple():
                return [ReportWriter.sanitize(v) for v in value]
            case int():
                return int(value)
            case float():
                return finite_or_none(value)
            case _:
                # numpy scalars end up here
                if hasattr(value, "item"):
                    return ReportWriter.sanitize(value.item())
                raise ValueError(
                    f"Type {type(value).__name__} is not supported in reports."
                )

    def write_json(self, payload: dict) -> None:
        """Write `payload` as one JSON document with sorted keys.

        :param payload: The report.
        :type payload: dict
        """
        if self.__documents > 0:
            raise ValueError(f"A JSON report was already written to {self.__filepath}.")
        text = json.dumps(ReportWriter.sanitize(payload), indent=2, sort_keys=True)
        self.write(text + "\n")
        self.__documents += 1

    def write_csv(self, columns: list[str], rows: list[dict]) -> None:
        """Write `rows` as a CSV table with header `columns`. Floats are rendered with
        `repr`, which never depends on the locale.

        :param columns: Column names, in output order.
        :type columns: list[str]
        :param rows: One dictionary per row, keyed by column name.
        :type rows: list[dict]
        """
        table = csv.writer(self.__filehandle, lineterminator="\n")
        try:
            table.writerow(columns)
            for row in rows:
                table.writerow([ReportWriter.format_cell(row.get(c)) for c in columns])
        except OSError as exc:
            raise IOError(f"Unable to write contents to {self.__filepath}.") from exc
        self.__documents += 1

    @staticmethod
    def format_cell(value) -> str:
        """Render a single CSV cell.

        :param value: Cell content.
        :type value: Any
        """
        value = ReportWriter.sanitize(value)
        match value:
            case None:
                return ""
            case bool():
                return "true" if value else "false"
            case float():
                return repr(value)
            case list():
                return json.dumps(value)
            case _:
                return str(value)
