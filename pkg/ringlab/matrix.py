from typing import Iterator, List, Optional, Tuple

import numpy as np


class Matrix:
    """
    Grid of element indices, used for Cayley tables

    Table rings, endomorphism tables and the table file format all
    go through this grid. Values are 0-based element indices.

    Scans do not index into a ``Matrix`` cell by cell, they use the
    array from :meth:`to_array`.

    Parameters
    ----------
    rows: int
        Number of rows
    cols: int
        Number of columns
    data: list of int, default ``None``
        Flat, row-major values. All zero if omitted.

    Attributes
    ----------
    n_rows: int
    n_cols: int

    **Example:** ::

        print(Matrix.from_rows([[0, 1], [1, 0]]))

        >> +  | 0 1
        >> ---+----
        >> 0  | 0 1
        >> 1  | 1 0
    """
    def __init__(
        self, rows: int, cols: int, data: Optional[List[int]] = None
    ) -> None:
        if data is None:
            data = [0] * (rows * cols)
        if len(data) != rows * cols:
            raise RuntimeError(
                'A {}x{} table needs {} entries, got {}'.format(
                    rows, cols, rows * cols, len(data)
                )
            )
        self.n_rows = rows
        self.n_cols = cols
        self._grid = np.array(data, dtype=np.int64).reshape(rows, cols)

    @classmethod
    def from_rows(cls, rows: List[List[int]]) -> 'Matrix':
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            raise RuntimeError('All table rows must have the same length')
        return cls(len(rows), width, [x for row in rows for x in row])

    @classmethod
    def from_array(cls, array: np.ndarray) -> 'Matrix':
        rows, cols = array.shape
        return cls(rows, cols, array.reshape(-1).tolist())

    def __getitem__(self, key: Tuple[int, int]) -> int:
        row, col = key
        if not (0 <= row < self.n_rows and 0 <= col < self.n_cols):
            raise IndexError(
                'Cell ({}, {}) is outside the {}x{} table'.format(
                    row, col, self.n_rows, self.n_cols
                )
            )
        return int(self._grid[row, col])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self._grid.shape == other._grid.shape and
            bool((self._grid == other._grid).all())
        )

    @property
    def rows(self) -> Iterator[List[int]]:
        for row in self._grid:
            yield row.tolist()

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def is_total(self, order: int) -> bool:
        """
        ``True`` if every entry is a valid index into ``range(order)``
        """
        return bool(((self._grid >= 0) & (self._grid < order)).all())

    def to_array(self) -> np.ndarray:
        return self._grid.astype(np.int32)

    def to_text(self) -> str:
        return '\n'.join(' '.join(str(x) for x in row) for row in self.rows)

    def __str__(self) -> str:
        width = len(str(max(self.n_rows, self.n_cols, int(self._grid.max(initial=0)))))
        label = max(width, 2)
        header = '{} | {}'.format(
            '+'.ljust(label),
            ' '.join(str(c).rjust(width) for c in range(self.n_cols))
        )
        lines = [header, '-' * (label + 1) + '+' + '-' * (len(header) - label - 2)]
        for idx, row in enumerate(self.rows):
            lines.append('{} | {}'.format(
                str(idx).ljust(label),
                ' '.join(str(x).rjust(width) for x in row)
            ))
        return '\n'.join(lines)


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split('#', 1)[0].strip()
        yield number, stripped


def _read_order(lines: List[Tuple[int, str]]) -> int:
    for _, line in lines:
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] != 'order' or not parts[1].isdigit():
            raise RuntimeError(
                'Table file must start with `order n`, found `{}`'.format(
                    line
                )
            )
        return int(parts[1])
    raise RuntimeError('Table file is empty')


def parse_table_text(text: str) -> Tuple[Matrix, Matrix]:
    """
    Parses the table-ring file format

    The first line is ``order n``, followed by the n rows of the
    addition table, a blank line and the n rows of the multiplication
    table. Entries are 0-based element indices. ``#`` starts a comment.

    Parameters
    ----------
    text: str
        Content of the table file

    Returns
    -------
    tuple of :class:`Matrix`
        The addition table and the multiplication table
    """
    lines = list(_content_lines(text))
    order = _read_order(lines)
    body = lines[[i for i, (_, line) in enumerate(lines) if line][0] + 1:]

    blocks: List[List[List[int]]] = [[]]
    for number, line in body:
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise RuntimeError(
                'Invalid table entry on line {}: `{}`'.format(number, line)
            )
        if len(row) != order:
            raise RuntimeError(
                'Line {} has {} entries, expected {}'.format(
                    number, len(row), order
                )
            )
        blocks[-1].append(row)
    blocks = [block for block in blocks if block]

    if len(blocks) != 2 or any(len(block) != order for block in blocks):
        raise RuntimeError(
            'Expected two {0}x{0} tables separated by a blank line'.format(
                order
            )
        )
    add, mul = (Matrix.from_rows(block) for block in blocks)
    for name, table in (('addition', add), ('multiplication', mul)):
        if not table.is_total(order):
            raise RuntimeError(
                'The {} table has entries outside 0..{}'.format(
                    name, order - 1
                )
            )
    return add, mul


def read_table_file(path: str) -> Tuple[Matrix, Matrix]:
    with open(path) as fh:
        return parse_table_text(fh.read())


def table_text(add: Matrix, mul: Matrix) -> str:
    """
    Serializes two tables in the table-ring file format
    """
    return 'order {}\n{}\n\n{}\n'.format(
        add.n_rows, add.to_text(), mul.to_text()
    )


def parse_map_text(text: str) -> List[int]:
    """
    Parses an endomorphism table: ``order n`` followed by n image indices

    The images may be spread over any number of lines.
    """
    lines = list(_content_lines(text))
    order = _read_order(lines)
    first = [i for i, (_, line) in enumerate(lines) if line][0]
    images: List[int] = []
    for number, line in lines[first + 1:]:
        try:
            images.extend(int(x) for x in line.split())
        except ValueError:
            raise RuntimeError(
                'Invalid map entry on line {}: `{}`'.format(number, line)
            )
    if len(images) != order:
        raise RuntimeError(
            'Map has {} images, expected {}'.format(len(images), order)
        )
    return images


def read_map_file(path: str) -> List[int]:
    with open(path) as fh:
        return parse_map_text(fh.read())
