# Import built-in logging first to avoid conflicts
import logging as builtin_logging
from typing import TYPE_CHECKING, Any, Iterable, List, Optional, Sequence, Union

# Enhanced libraries with proper error handling
try:
    from tqdm import tqdm

    HAS_TQDM = True
except ImportError:
    HAS_TQDM = False

    # Fallback iterator
    def tqdm(iterable, *args, **kwargs):
        return iterable


try:
    from rich.console import Console
    from rich.table import Table
    from rich.tree import Tree

    HAS_RICH = True
    console = Console()
    err_console = Console(stderr=True)
except ImportError:
    import sys

    HAS_RICH = False

    # Create a fallback console with a print method
    class FallbackConsole:
        def __init__(self, stderr: bool = False):
            self.stderr = stderr

        def print(self, *args, **kwargs):
            print(*args, file=sys.stderr if self.stderr else sys.stdout)

    console = FallbackConsole()
    err_console = FallbackConsole(stderr=True)


class EnhancedLogger:
    """Console status lines on stderr, mirrored to the builtin logger"""

    def __init__(self, name: str = "skein"):
        self.name = name
        self.use_rich = HAS_RICH
        self.logger = builtin_logging.getLogger(name)

    def info(self, message: str, **kwargs):
        if self.use_rich:
            err_console.print(f"ℹ️ [blue]{self.name}[/blue] | {message}", **kwargs)
        else:
            err_console.print(f"ℹ️ {self.name} | {message}")
        self.logger.info(message)

    def success(self, message: str, **kwargs):
        if self.use_rich:
            err_console.print(f"✅ [green]{self.name}[/green] | {message}", **kwargs)
        else:
            err_console.print(f"✅ {self.name} | {message}")
        self.logger.info(f"SUCCESS: {message}")

    def warning(self, message: str, **kwargs):
        if self.use_rich:
            err_console.print(f"⚠️ [yellow]{self.name}[/yellow] | {message}", **kwargs)
        else:
            err_console.print(f"⚠️ {self.name} | {message}")
        self.logger.warning(message)

    def error(self, message: str, **kwargs):
        if self.use_rich:
            err_console.print(f"❌ [red]{self.name}[/red] | {message}", **kwargs)
        else:
            err_console.print(f"❌ {self.name} | {message}")
        self.logger.error(message)


class ProgressTracker:
    """Progress bars for long sweeps; silent when disabled or tqdm is missing"""

    def __init__(self, enabled: bool = True):
        self.use_tqdm = HAS_TQDM and enabled

    def track(self, iterable: Iterable, description: str = "Processing", total: Optional[int] = None):
        if self.use_tqdm:
            return tqdm(iterable, desc=description, total=total, leave=False)
        return iterable


# For type checking
if TYPE_CHECKING:
    from rich.table import Table
    from rich.tree import Tree


def create_table(title: str, headers: List[str], rows: Sequence[Sequence[Any]]) -> Union["Table", str]:
    """Create a formatted table

    Args:
        title: The table title
        headers: List of column headers
        rows: List of rows; cells are converted with str()

    Returns:
        Either a Rich Table object (if Rich is available) or a string representation
    """
    rows = [[str(cell) for cell in row] for row in rows]
    if HAS_RICH:
        table = Table(title=title)
        for header in headers:
            table.add_column(header)
        for row in rows:
            table.add_row(*row)
        return table
    lines = [title, "=" * len(title)]
    lines.append(" | ".join(headers))
    lines.append("-" * (len(" | ".join(headers))))
    for row in rows:
        lines.append(" | ".join(row))
    return "\n".join(lines)


def display_table(title: str, headers: List[str], rows: Sequence[Sequence[Any]]):
    """Display a formatted table"""
    console.print(create_table(title, headers, rows))


class TreeNode:
    """Minimal label/children pair for display_tree."""

    def __init__(self, label: str, children: Optional[List["TreeNode"]] = None):
        self.label = label
        self.children = children or []


def _text_tree(node: TreeNode, prefix: str = "", last: bool = True, root: bool = True) -> List[str]:
    lines = [node.label if root else f"{prefix}{'└── ' if last else '├── '}{node.label}"]
    child_prefix = "" if root else prefix + ("    " if last else "│   ")
    for i, child in enumerate(node.children):
        lines.extend(_text_tree(child, child_prefix, i == len(node.children) - 1, False))
    return lines


def create_tree(node: TreeNode) -> Union["Tree", str]:
    if HAS_RICH:
        def build(n: TreeNode, parent: Tree) -> None:
            for child in n.children:
                build(child, parent.add(child.label))

        tree = Tree(node.label)
        build(node, tree)
        return tree
    return "\n".join(_text_tree(node))


def display_tree(node: TreeNode):
    console.print(create_tree(node))
