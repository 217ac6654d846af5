import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence

import click
from tqdm import tqdm

logger = logging.getLogger(__name__)


def split_into_blocks(items: Sequence, blocks: int) -> List[list]:
    items = list(items)
    if not items:
        return []
    blocks = max(1, min(blocks, len(items)))
    size = -(-len(items) // blocks)
    return [items[i : i + size] for i in range(0, len(items), size)]


def run_parallel(
    func: Callable,
    items: Iterable,
    workers: int = 1,
    desc: Optional[str] = None,
    chunksize: int = 1,
) -> list:
    """Map func over items, keeping input order whatever the worker count."""
    items = list(items)
    progress = dict(total=len(items), desc=desc, disable=None, leave=False, ascii=True)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in tqdm(items, **progress)]

    logger.info(f"{desc or 'running'}: {len(items)} tasks on {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        results = executor.map(func, items, chunksize=chunksize)
        return list(tqdm(results, **progress))


def render_csv(header: List[str], rows: Iterable[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def render_json(header: List[str], rows: Iterable[list]) -> str:
    records = [
        {key: (None if value == "" else value) for key, value in zip(header, row)}
        for row in rows
    ]
    return json.dumps(records, indent=2) + "\n"


def render_table(header: List[str], rows: Iterable[list]) -> str:
    cells = [[str(value) for value in header]] + [
        [str(value) for value in row] for row in rows
    ]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = [
        "  ".join(value.rjust(width) for value, width in zip(row, widths)).rstrip()
        for row in cells
    ]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


RENDERERS = {"csv": render_csv, "json": render_json, "table": render_table}


def render(header: List[str], rows: Iterable[list], output_format: str = "csv") -> str:
    return RENDERERS[output_format](header, list(rows))


def write_output(text: str, output_path: Optional[str] = None) -> None:
    if output_path is None:
        click.echo(text, nl=False)
        return
    logger.info(f"saving output in {output_path}")
    with open(output_path, "w", encoding="ascii", newline="") as file:
        file.write(text)

