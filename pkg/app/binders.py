########################
#  Binder Machinery    #
########################

from dataclasses import dataclass, fields, replace
from typing import (
    AbstractSet, Callable, ClassVar, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple,
)

# Per-class caches of field names, filled lazily
_FIELD_NAMES: Dict[type, Tuple[str, ...]] = {}
_COMPARED_NAMES: Dict[type, Tuple[str, ...]] = {}


def _field_names(cls: type) -> Tuple[str, ...]:
    names = _FIELD_NAMES.get(cls)
    if names is None:
        names = tuple(f.name for f in fields(cls))
        _FIELD_NAMES[cls] = names
    return names


def _compared_names(cls: type) -> Tuple[str, ...]:
    names = _COMPARED_NAMES.get(cls)
    if names is None:
        names = tuple(f.name for f in fields(cls) if f.compare)
        _COMPARED_NAMES[cls] = names
    return names


@dataclass(frozen=True, eq=False)
class Node:
    """
    Base class for every syntax tree handled by the toolchain.

    Trees use a locally nameless representation: a variable bound by an
    enclosing binder is a ``Bound`` index counted from the innermost binder,
    a free variable is a ``Var`` carrying its name. Surface names of binders
    are declared with ``field(compare=False)`` in subclasses, so ``==`` and
    ``hash`` identify alpha-equivalent trees.

    Subclasses list their scoped fields in ``SCOPES``: each entry maps a
    field to the fields holding the surface names of the binders it sits
    under, outermost first.

    Subclasses are declared with ``eq=False`` so they inherit the equality
    and hashing below, which walk the tree with an explicit stack. Unary
    numerals make trees as deep as the numbers they denote.
    """

    SCOPES: ClassVar[Dict[str, Tuple[str, ...]]] = {}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Node):
            return NotImplemented
        pending = [(self, other)]
        while pending:
            left, right = pending.pop()
            if left is right:
                continue
            if type(left) is not type(right):
                return False
            left_hash, right_hash = left.__dict__.get("_hash"), right.__dict__.get("_hash")
            if left_hash is not None and right_hash is not None and left_hash != right_hash:
                return False
            for name in _compared_names(type(left)):
                a, b = getattr(left, name), getattr(right, name)
                if isinstance(a, Node) and isinstance(b, Node):
                    pending.append((a, b))
                elif a != b:
                    return False
        return True

    def __hash__(self) -> int:
        cached = self.__dict__.get("_hash")
        if cached is not None:
            return cached
        work = [(self, False)]
        while work:
            node, ready = work.pop()
            if "_hash" in node.__dict__:
                continue
            values = [getattr(node, name) for name in _compared_names(type(node))]
            if not ready:
                work.append((node, True))
                work.extend((value, False) for value in values
                            if isinstance(value, Node) and "_hash" not in value.__dict__)
                continue
            key = tuple(value.__dict__["_hash"] if isinstance(value, Node) else value
                        for value in values)
            # cached outside the dataclass fields, so replace() and repr() ignore it
            object.__setattr__(node, "_hash", hash((type(node), key)))
        return self.__dict__["_hash"]

    def children(self) -> Iterator[Tuple[str, "Node", int]]:
        """
        Iterate over sub-trees.

        Yields:
            Tuple[str, Node, int]: field name, child, and the number of binders
            the child sits under.
        """
        for name in _field_names(type(self)):
            value = getattr(self, name)
            if isinstance(value, Node):
                yield name, value, len(self.SCOPES.get(name, ()))

    def map_children(self, fn: Callable[["Node", int], "Node"]) -> "Node":
        """
        Rebuild this node with ``fn`` applied to each child.

        Args:
            fn: Called with the child and its binder count.

        Returns:
            Node: The rebuilt node, or ``self`` when nothing changed.
        """
        changes = {}
        for name, child, depth in self.children():
            new_child = fn(child, depth)
            if new_child is not child:
                changes[name] = new_child
        return replace(self, **changes) if changes else self

    def binder_names(self, scope: str) -> List[str]:
        """Surface names of the binders over ``scope``, outermost first."""
        return [getattr(self, name) for name in self.SCOPES.get(scope, ())]


@dataclass(frozen=True, eq=False)
class Var(Node):
    """A free variable."""
    name: str


@dataclass(frozen=True, eq=False)
class Bound(Node):
    """A variable bound by an enclosing binder (0 is the innermost)."""
    index: int


########################
#  Traversals          #
########################


def walk(node: Node) -> Iterator[Tuple[Node, int]]:
    """
    Visit every sub-tree, parents before children.

    Yields:
        Tuple[Node, int]: The sub-tree and the number of binders above it.
    """
    stack = [(node, 0)]
    while stack:
        current, depth = stack.pop()
        yield current, depth
        stack.extend((child, depth + k) for _, child, k in current.children())


def rewrite(node: Node, visit: Callable[[Node, int], Optional[Node]]) -> Node:
    """
    Rebuild a tree bottom-up.

    ``visit`` is called on each sub-tree with its binder depth before its
    children are visited. A result other than None replaces that sub-tree
    and its children are skipped; otherwise the node is rebuilt from its
    rewritten children. Unchanged sub-trees are shared with the input.

    Args:
        node: The tree to rewrite.
        visit: Replacement function.

    Returns:
        Node: The rewritten tree.
    """
    results: List[Node] = []
    work: List[Tuple[Node, int, Optional[List[Tuple[str, Node, int]]]]] = [(node, 0, None)]
    while work:
        current, depth, kids = work.pop()
        if kids is None:
            replacement = visit(current, depth)
            if replacement is not None:
                results.append(replacement)
                continue
            kids = list(current.children())
            if not kids:
                results.append(current)
                continue
            work.append((current, depth, kids))
            work.extend((child, depth + k, None) for _, child, k in reversed(kids))
            continue
        rebuilt = results[-len(kids):]
        del results[-len(kids):]
        changes = {name: new for (name, child, _), new in zip(kids, rebuilt) if new is not child}
        results.append(replace(current, **changes) if changes else current)
    return results[0]


def _rebuild(node: Node, leaf: Callable[[Node, int], Node]) -> Node:
    return rewrite(node, lambda current, depth: (
        leaf(current, depth) if isinstance(current, (Var, Bound)) else None))


def abstract(node: Node, names: Sequence[str]) -> Node:
    """
    Close a tree over free variables.

    Turns free occurrences of ``names`` into bound indices for ``len(names)``
    new binders; the last name belongs to the innermost binder.

    Args:
        node: A locally closed tree.
        names: Binder names, outermost first.

    Returns:
        Node: The tree as the body of the new binders.
    """
    count = len(names)
    # a repeated name resolves to its innermost binder
    position = {name: i for i, name in enumerate(names)}

    def leaf(var: Node, depth: int) -> Node:
        if isinstance(var, Var) and var.name in position:
            return Bound(depth + count - 1 - position[var.name])
        return var

    return _rebuild(node, leaf)


def instantiate(node: Node, terms: Sequence[Node]) -> Node:
    """
    Open the innermost ``len(terms)`` binders of a scope.

    Args:
        node: Body of a scope.
        terms: Locally closed replacements, outermost binder first.

    Returns:
        Node: The body with the bound variables replaced. Indices that point
        past the opened binders are lowered accordingly.
    """
    count = len(terms)

    def leaf(var: Node, depth: int) -> Node:
        if isinstance(var, Bound) and var.index >= depth:
            offset = var.index - depth
            if offset < count:
                return terms[count - 1 - offset]
            return Bound(var.index - count)
        return var

    return _rebuild(node, leaf)


def substitute(node: Node, name: str, value: Node) -> Node:
    """
    Replace the free variable ``name`` by ``value``.

    ``value`` must be locally closed; binders cannot capture it because bound
    variables carry no names.
    """
    def leaf(var: Node, depth: int) -> Node:
        if isinstance(var, Var) and var.name == name:
            return value
        return var

    return _rebuild(node, leaf)


def free_vars(node: Node) -> FrozenSet[str]:
    """Names of all free variables of a tree."""
    return frozenset(current.name for current, _ in walk(node) if isinstance(current, Var))


def is_locally_closed(node: Node, depth: int = 0) -> bool:
    """True if no bound index points outside the tree."""
    return all(current.index < depth + k for current, k in walk(node) if isinstance(current, Bound))


def fresh_name(base: str, avoid: AbstractSet[str]) -> str:
    """
    Pick a name not in ``avoid``.

    Args:
        base: Preferred name.
        avoid: Names already in use.

    Returns:
        str: ``base`` itself, or ``base`` followed by as many primes as needed.
    """
    name = base
    while name in avoid:
        name += "'"
    return name
