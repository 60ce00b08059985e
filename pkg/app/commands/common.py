"""Options and output helpers shared by the sub-commands."""
import sys
from contextlib import contextmanager
from typing import Iterator, List, Optional

import pandas as pd
from tqdm import tqdm

from .. import config
from ..errors import UsageError
from ..models import CurveRecord
from ..schemas import CSV_COLUMNS, CurveRow, OutputRecord
from ..services.classify import ProgressCallback
from ..services.excel_handler import generate_styled_excel

FORMATS = ("table", "csv", "json-lines", "xlsx")


def add_parallel_options(parser):
    parser.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS,
                        help="worker processes for the (s,t) grid (env ECTORSION_JOBS)")
    parser.add_argument("--progress", action="store_true", help="show a progress bar on stderr")


def add_format_options(parser, formats=FORMATS):
    parser.add_argument("--format", choices=formats, default="table")
    if "xlsx" in formats:
        parser.add_argument("--output", help="file to write (required for xlsx)")


@contextmanager
def progress_bar(enabled: bool, desc: str) -> Iterator[Optional[ProgressCallback]]:
    if not enabled:
        yield None
        return
    with tqdm(total=100, desc=desc, file=sys.stderr,
              bar_format="{l_bar}{bar}| {n_fmt}% [{elapsed}<{remaining}]") as pbar:

        def callback(percent: int, message: str):
            pbar.update(percent - pbar.n)
            pbar.set_postfix_str(message)

        yield callback


def emit(command: str, payload) -> None:
    """One OutputRecord as a single JSON line on stdout."""
    print(OutputRecord(command=command, payload=payload).model_dump_json())


def curves_frame(records: List[CurveRecord]) -> pd.DataFrame:
    rows = [CurveRow.from_record(r).model_dump() for r in records]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_frame(df: pd.DataFrame, fmt: str, output: Optional[str], title: str) -> None:
    if fmt == "xlsx":
        if not output:
            raise UsageError("--format xlsx needs --output FILE")
        generate_styled_excel(df, output, title=title)
        print(f"wrote {len(df)} row(s) to {output}")
    elif fmt == "csv":
        if output:
            df.to_csv(output, index=False)
        else:
            df.to_csv(sys.stdout, index=False, lineterminator="\n")
    else:
        text = df.to_markdown(index=False) if len(df) else "(no rows)"
        if output:
            with open(output, "w", encoding="utf-8") as f:
                f.write(text + "\n")
        else:
            print(text)
