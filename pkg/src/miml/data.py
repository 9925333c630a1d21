"""MIML datasets: in-memory model plus the ARFF/XML file pair reader and writer.

A dataset file follows the Mulan-style MIML layout::

    @relation toy
    @attribute id {b1,b2}
    @attribute bag relational
      @attribute f1 numeric
      @attribute f2 numeric
    @end bag
    @attribute red {0,1}
    @attribute blue {0,1}
    @data
    b1,"0.5,1.0\\n0.25,2.0",1,0
    b2,"3.0,1.5",0,1

and a sidecar XML file lists the label attributes::

    <labels>
      <label name="red"/>
      <label name="blue"/>
    </labels>

The sidecar order defines the label column order of the parsed dataset.
"""

from __future__ import annotations

import math
import os
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

import numpy as np

from .errors import DataSyntaxError, SchemaError

__all__ = [
    "AttributeSchema",
    "Bag",
    "LabelMatrix",
    "MIMLDataset",
    "parse_dataset",
    "parse_labels_xml",
    "write_dataset",
    "select_bags",
]


@dataclass(frozen=True)
class AttributeSchema:
    names: tuple
    kinds: tuple = None

    def __post_init__(self):
        names = tuple(str(n) for n in self.names)
        kinds = tuple(self.kinds) if self.kinds is not None else ("numeric",) * len(names)
        if not names:
            raise SchemaError("schema needs at least one attribute")
        if any(not n for n in names):
            raise SchemaError("attribute names must be non-empty")
        if len(set(names)) != len(names):
            raise SchemaError(f"duplicate attribute names in {names}")
        if len(kinds) != len(names):
            raise SchemaError("one kind per attribute required")
        if any(k != "numeric" for k in kinds):
            raise SchemaError("only numeric attributes are supported")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "kinds", kinds)

    def __len__(self):
        return len(self.names)


@dataclass(frozen=True, eq=False)
class Bag:
    """A named set of instances stored as an ``(n_instances, d)`` float array."""

    id: str
    instances: np.ndarray

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise SchemaError("bag id must be a non-empty string")
        x = np.array(self.instances, dtype=np.float64)
        if x.ndim == 1:
            x = x.reshape(1, -1)
        if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
            raise SchemaError(f"bag {self.id!r} must hold at least one instance")
        if not np.all(np.isfinite(x)):
            raise SchemaError(f"bag {self.id!r} holds non-finite values")
        x.setflags(write=False)
        object.__setattr__(self, "instances", x)

    @property
    def n_instances(self):
        return self.instances.shape[0]

    @property
    def dim(self):
        return self.instances.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Bag):
            return NotImplemented
        return self.id == other.id and _same_array(self.instances, other.instances)

    def __hash__(self):
        return hash((self.id, self.instances.shape))


@dataclass(frozen=True, eq=False)
class LabelMatrix:
    values: np.ndarray
    label_names: tuple

    def __post_init__(self):
        names = tuple(str(n) for n in self.label_names)
        y = np.asarray(self.values)
        if y.ndim != 2:
            raise SchemaError("label matrix must be two-dimensional")
        if not np.all((y == 0) | (y == 1)):
            raise SchemaError("label values must be 0 or 1")
        if y.shape[1] != len(names):
            raise SchemaError(
                f"{y.shape[1]} label columns but {len(names)} label names")
        if len(names) < 2:
            raise SchemaError("at least two labels are required")
        if len(set(names)) != len(names) or any(not n for n in names):
            raise SchemaError("label names must be unique and non-empty")
        y = y.astype(np.int8, copy=True)
        y.setflags(write=False)
        object.__setattr__(self, "values", y)
        object.__setattr__(self, "label_names", names)

    @property
    def n_labels(self):
        return len(self.label_names)

    def __len__(self):
        return self.values.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LabelMatrix):
            return NotImplemented
        return (self.label_names == other.label_names
                and _same_array(self.values, other.values))

    def __hash__(self):
        return hash((self.label_names, self.values.shape))


@dataclass(frozen=True, eq=False)
class MIMLDataset:
    """Bags, the shared feature schema and the binary label matrix.

    Instances are immutable; transformations return new datasets.
    """

    schema: AttributeSchema
    bags: tuple
    labels: LabelMatrix
    relation_name: str = "miml"
    bag_id_name: str = "id"
    bag_attribute_name: str = "bag"

    def __post_init__(self):
        bags = tuple(self.bags)
        object.__setattr__(self, "bags", bags)
        if not bags:
            raise SchemaError("a dataset needs at least one bag")
        if len(bags) != len(self.labels):
            raise SchemaError(
                f"{len(bags)} bags but {len(self.labels)} label rows")
        d = len(self.schema)
        for bag in bags:
            if bag.dim != d:
                raise SchemaError(
                    f"bag {bag.id!r} has {bag.dim} attributes, schema has {d}")
        ids = [b.id for b in bags]
        if len(set(ids)) != len(ids):
            seen = set()
            dup = next(i for i in ids if i in seen or seen.add(i))
            raise SchemaError(f"duplicate bag id {dup!r}")
        reserved = {self.bag_id_name, self.bag_attribute_name}
        if len(reserved) != 2 or reserved & set(self.labels.label_names):
            raise SchemaError("bag id, bag and label attribute names must differ")

    @classmethod
    def from_arrays(cls, instances, labels, label_names=None, attribute_names=None,
                    bag_ids=None, relation_name="miml"):
        """Build a dataset from a list of instance arrays and a label array."""
        arrays = [np.atleast_2d(np.asarray(x, dtype=np.float64)) for x in instances]
        y = np.asarray(labels)
        q = y.shape[1]
        d = arrays[0].shape[1]
        if label_names is None:
            label_names = [f"label{j}" for j in range(q)]
        if attribute_names is None:
            attribute_names = [f"f{j}" for j in range(d)]
        if bag_ids is None:
            bag_ids = [f"bag{i}" for i in range(len(arrays))]
        bags = tuple(Bag(str(i), x) for i, x in zip(bag_ids, arrays))
        return cls(AttributeSchema(tuple(attribute_names)), bags,
                   LabelMatrix(y, tuple(label_names)), relation_name)

    @property
    def n_bags(self):
        return len(self.bags)

    @property
    def n_attributes(self):
        return len(self.schema)

    @property
    def n_labels(self):
        return self.labels.n_labels

    @property
    def label_names(self):
        return self.labels.label_names

    @property
    def y(self):
        return self.labels.values

    def __len__(self):
        return len(self.bags)

    def __eq__(self, other):
        if not isinstance(other, MIMLDataset):
            return NotImplemented
        return (self.relation_name == other.relation_name
                and self.bag_id_name == other.bag_id_name
                and self.bag_attribute_name == other.bag_attribute_name
                and self.schema == other.schema
                and self.labels == other.labels
                and self.bags == other.bags)

    def __hash__(self):
        return hash((self.relation_name, len(self.bags)))


def _same_array(a, b):
    # bitwise comparison: distinguishes -0.0 from 0.0 as a round trip should
    return a.shape == b.shape and a.dtype == b.dtype and a.tobytes() == b.tobytes()


def select_bags(ds, indices):
    """Return a new dataset made of the bags at ``indices``, in that order.

    Repeated indices are allowed (bootstrap sampling); the copies get
    ``#1``, ``#2``, ... appended to their id so ids stay unique.
    """
    indices = [int(i) for i in indices]
    m = ds.n_bags
    for i in indices:
        if not 0 <= i < m:
            raise IndexError(f"bag index {i} out of range for {m} bags")
    if not indices:
        raise IndexError("at least one bag index is required")
    taken = {ds.bags[i].id for i in set(indices)}
    used = set()
    bags = []
    for i in indices:
        bag = ds.bags[i]
        new_id = bag.id
        if new_id in used:
            n = 1
            while f"{bag.id}#{n}" in used or f"{bag.id}#{n}" in taken:
                n += 1
            new_id = f"{bag.id}#{n}"
            bag = Bag(new_id, bag.instances)
        used.add(new_id)
        bags.append(bag)
    labels = LabelMatrix(ds.labels.values[indices], ds.labels.label_names)
    return MIMLDataset(ds.schema, tuple(bags), labels, ds.relation_name,
                       ds.bag_id_name, ds.bag_attribute_name)


# ---------------------------------------------------------------- reading

_NUMERIC_TYPES = {"numeric", "real", "integer"}
_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", "'": "'", '"': '"', "%": "%"}


class _Cursor:
    """Character scanner over one line, tracking the column for errors."""

    def __init__(self, text, lineno):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def error(self, message, pos=None):
        col = (self.pos if pos is None else pos) + 1
        return DataSyntaxError(message, self.lineno, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def quoted(self):
        """Read a quoted token, resolving backslash escapes."""
        start = self.pos
        quote = self.text[self.pos]
        self.pos += 1
        out = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated quoted value", start)
            c = self.text[self.pos]
            if c == "\\":
                if self.pos + 1 >= len(self.text):
                    raise self.error("dangling escape")
                nxt = self.text[self.pos + 1]
                out.append(_ESCAPES.get(nxt, "\\" + nxt))
                self.pos += 2
            elif c == quote:
                self.pos += 1
                return "".join(out)
            else:
                out.append(c)
                self.pos += 1

    def token(self, stops=" \t,{}"):
        """Read one bare or quoted token; returns (value, start column)."""
        self.skip_ws()
        start = self.pos
        if self.peek() in ("'", '"'):
            return self.quoted(), start
        while self.pos < len(self.text) and self.text[self.pos] not in stops:
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a value")
        return self.text[start:self.pos], start

    def rest(self):
        self.skip_ws()
        return self.text[self.pos:].strip()


def _parse_nominal(cur):
    """Parse ``{a,b,...}`` starting at the opening brace."""
    if cur.peek() != "{":
        raise cur.error("expected '{'")
    cur.pos += 1
    values = []
    while True:
        cur.skip_ws()
        if cur.peek() == "}":
            cur.pos += 1
            break
        val, _ = cur.token(stops=",}")
        values.append(val.strip())
        cur.skip_ws()
        c = cur.peek()
        if c == ",":
            cur.pos += 1
        elif c == "}":
            cur.pos += 1
            break
        else:
            raise cur.error("expected ',' or '}' in nominal list")
    if not cur.at_end():
        raise cur.error("unexpected text after nominal list")
    return values


def _parse_attribute(cur):
    """Parse the remainder of an ``@attribute`` line -> (name, type, nominal values)."""
    name, _ = cur.token()
    cur.skip_ws()
    if cur.peek() == "{":
        return name, "nominal", _parse_nominal(cur)
    if cur.at_end():
        raise cur.error(f"attribute {name!r} has no type")
    type_start = cur.pos
    kind = cur.rest().lower()
    if kind in _NUMERIC_TYPES:
        return name, "numeric", None
    if kind in ("string", "relational"):
        return name, kind, None
    if kind.startswith("date"):
        return name, "date", None
    raise cur.error(f"unknown attribute type {kind!r}", type_start)


def _split_record(cur):
    """Split one @data line into top-level fields -> list of (value, column, quoted)."""
    fields = []
    while True:
        cur.skip_ws()
        start = cur.pos
        if cur.peek() in ("'", '"'):
            value = cur.quoted()
            quoted = True
        else:
            while cur.pos < len(cur.text) and cur.text[cur.pos] != ",":
                cur.pos += 1
            value = cur.text[start:cur.pos].strip()
            quoted = False
            if not value:
                raise cur.error("empty field", start)
        fields.append((value, start + 1, quoted))
        cur.skip_ws()
        if cur.pos >= len(cur.text):
            return fields
        if cur.peek() != ",":
            raise cur.error("expected ',' between fields")
        cur.pos += 1


def _parse_number(token, where):
    token = token.strip()
    if token == "?":
        raise SchemaError(f"{where}: missing values ('?') are not supported")
    try:
        value = float(token)
    except ValueError:
        raise SchemaError(f"{where}: non-numeric feature value {token!r}") from None
    if not math.isfinite(value):
        raise SchemaError(f"{where}: non-finite feature value {token!r}")
    return value


def _parse_label(token, name, where):
    token = token.strip()
    if token == "?":
        raise SchemaError(f"{where}: missing value for label {name!r}")
    try:
        value = float(token)
    except ValueError:
        value = None
    if value not in (0.0, 1.0):
        raise SchemaError(f"{where}: label {name!r} has non-binary value {token!r}")
    return int(value)


def parse_labels_xml(path):
    """Read the label sidecar file and return the label names in file order."""
    try:
        tree = ET.parse(path)
    except ET.ParseError as exc:
        line, col = exc.position
        raise DataSyntaxError(f"{path}: malformed labels XML", line, col + 1) from None
    root = tree.getroot()
    if _local(root.tag) != "labels":
        raise SchemaError(f"{path}: root element must be <labels>, got <{_local(root.tag)}>")
    names = []
    for child in root:
        if _local(child.tag) != "label":
            raise SchemaError(f"{path}: unexpected element <{_local(child.tag)}>")
        if len(child):
            raise SchemaError(f"{path}: hierarchical labels are not supported")
        name = child.get("name")
        if not name:
            raise SchemaError(f"{path}: <label> without a name attribute")
        if name in names:
            raise SchemaError(f"{path}: label {name!r} listed twice")
        names.append(name)
    if len(names) < 2:
        raise SchemaError(f"{path}: at least two labels are required")
    return names


def _local(tag):
    return tag.rsplit("}", 1)[-1]


def parse_dataset(arff_path, labels_xml_path):
    """Load a MIML dataset from an ARFF file and its label sidecar XML."""
    label_names = parse_labels_xml(labels_xml_path)
    with open(arff_path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    return _parse_arff_lines(lines, label_names, str(arff_path))


def _parse_arff_lines(lines, label_names, source):
    relation = None
    top_attrs = []      # (name, kind, nominal values, lineno)
    rel_attrs = []      # (name, lineno)
    in_relational = None
    data_start = None

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        cur = _Cursor(raw, lineno)
        cur.skip_ws()
        m = re.match(r"@(\w+)", raw[cur.pos:])
        if not m:
            raise cur.error("expected a header declaration")
        keyword = m.group(1).lower()
        cur.pos += m.end()
        if keyword == "relation":
            if relation is not None:
                raise cur.error("duplicate @relation")
            relation, _ = cur.token()
            if not cur.at_end():
                raise cur.error("unexpected text after relation name")
        elif keyword == "attribute":
            if relation is None:
                raise cur.error("@attribute before @relation")
            name, kind, nominal = _parse_attribute(cur)
            if in_relational is not None:
                if kind != "numeric":
                    raise SchemaError(
                        f"{source}:{lineno}: feature {name!r} is {kind}; "
                        "only numeric features are supported")
                rel_attrs.append((name, lineno))
            else:
                top_attrs.append((name, kind, nominal, lineno))
                if kind == "relational":
                    in_relational = name
        elif keyword == "end":
            name, _ = cur.token()
            if in_relational is None or name != in_relational:
                raise cur.error(f"@end {name} does not close an open relational attribute")
            in_relational = None
        elif keyword == "data":
            if in_relational is not None:
                raise cur.error(f"relational attribute {in_relational!r} not closed")
            data_start = lineno
            break
        else:
            raise cur.error(f"unknown declaration @{keyword}")

    if relation is None:
        raise DataSyntaxError("missing @relation", 1, 1)
    if data_start is None:
        raise DataSyntaxError("missing @data section", len(lines) or 1, 1)

    # layout: bag id attribute, relational block, then labels only
    if len(top_attrs) < 2:
        raise SchemaError(f"{source}: expected a bag id attribute and a relational attribute")
    id_name, id_kind, id_values, id_line = top_attrs[0]
    if id_kind not in ("nominal", "string"):
        raise SchemaError(f"{source}:{id_line}: bag id attribute must be nominal or string")
    bag_name, bag_kind, _, bag_line = top_attrs[1]
    if bag_kind != "relational":
        raise SchemaError(f"{source}:{bag_line}: second attribute must be relational")
    if not rel_attrs:
        raise SchemaError(f"{source}:{bag_line}: relational attribute declares no features")
    feature_names = [n for n, _ in rel_attrs]
    if len(set(feature_names)) != len(feature_names):
        raise SchemaError(f"{source}: duplicate feature names")

    header_labels = {}
    for pos, (name, kind, nominal, lineno) in enumerate(top_attrs[2:], start=2):
        if name not in label_names:
            raise SchemaError(
                f"{source}:{lineno}: attribute {name!r} is not a declared label")
        if name in header_labels:
            raise SchemaError(f"{source}:{lineno}: attribute {name!r} declared twice")
        if kind == "nominal":
            if sorted(v.strip() for v in nominal) != ["0", "1"]:
                raise SchemaError(f"{source}:{lineno}: label {name!r} must be {{0,1}}")
        elif kind != "numeric":
            raise SchemaError(f"{source}:{lineno}: label {name!r} must be binary")
        header_labels[name] = pos
    missing = [n for n in label_names if n not in header_labels]
    if missing:
        raise SchemaError(f"{source}: labels missing from ARFF header: {missing}")
    if id_name in label_names or bag_name in label_names:
        raise SchemaError(f"{source}: bag attributes cannot be labels")
    label_pos = [header_labels[n] for n in label_names]
    allowed_ids = set(id_values) if id_kind == "nominal" else None

    n_fields = len(top_attrs)
    bags = []
    rows = []
    seen_ids = set()
    for lineno in range(data_start + 1, len(lines) + 1):
        raw = lines[lineno - 1]
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("{"):
            raise DataSyntaxError("sparse data rows are not supported", lineno, 1)
        cur = _Cursor(raw, lineno)
        fields = _split_record(cur)
        if len(fields) != n_fields:
            raise DataSyntaxError(
                f"expected {n_fields} fields, found {len(fields)}", lineno, 1)
        bag_id, id_col, _ = fields[0]
        where = f"{source}:{lineno}"
        if not bag_id:
            raise SchemaError(f"{where}: empty bag id")
        if allowed_ids is not None and bag_id not in allowed_ids:
            raise SchemaError(f"{where}: bag id {bag_id!r} not in the declared id values")
        if bag_id in seen_ids:
            raise SchemaError(f"{where}: duplicate bag id {bag_id!r}")
        seen_ids.add(bag_id)
        body, body_col, _ = fields[1]
        instances = []
        for inst in body.split("\n"):
            if not inst.strip():
                continue
            values = inst.split(",")
            if len(values) != len(feature_names):
                raise SchemaError(
                    f"{where}:{body_col}: instance has {len(values)} values, "
                    f"expected {len(feature_names)}")
            instances.append([_parse_number(v, where) for v in values])
        if not instances:
            raise SchemaError(f"{where}: bag {bag_id!r} is empty")
        bags.append(Bag(bag_id, np.array(instances, dtype=np.float64)))
        rows.append([_parse_label(fields[p][0], top_attrs[p][0], where) for p in label_pos])

    if not bags:
        raise SchemaError(f"{source}: no bags in @data section")
    labels = LabelMatrix(np.array(rows, dtype=np.int8), tuple(label_names))
    return MIMLDataset(AttributeSchema(tuple(feature_names)), tuple(bags), labels,
                       relation, id_name, bag_name)


# ---------------------------------------------------------------- writing

_BARE = re.compile(r"^[A-Za-z0-9_.\-+#]+$")


def _quote(token):
    if _BARE.match(token) and not token.startswith("@"):
        return token
    escaped = (token.replace("\\", "\\\\").replace("'", "\\'")
               .replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r"))
    return f"'{escaped}'"


def _fmt(value):
    # repr gives the shortest string that round-trips a double exactly
    return repr(float(value))


def format_arff(ds):
    """Render ``ds`` as MIML-ARFF text."""
    out = [f"@relation {_quote(ds.relation_name)}", ""]
    ids = ",".join(_quote(b.id) for b in ds.bags)
    out.append(f"@attribute {_quote(ds.bag_id_name)} {{{ids}}}")
    out.append(f"@attribute {_quote(ds.bag_attribute_name)} relational")
    for name in ds.schema.names:
        out.append(f"  @attribute {_quote(name)} numeric")
    out.append(f"@end {_quote(ds.bag_attribute_name)}")
    for name in ds.label_names:
        out.append(f"@attribute {_quote(name)} {{0,1}}")
    out.append("")
    out.append("@data")
    for bag, row in zip(ds.bags, ds.y):
        body = "\\n".join(",".join(_fmt(v) for v in inst) for inst in bag.instances)
        labels = ",".join(str(int(v)) for v in row)
        out.append(f'{_quote(bag.id)},"{body}",{labels}')
    return "\n".join(out) + "\n"


def format_labels_xml(label_names):
    root = ET.Element("labels")
    for name in label_names:
        ET.SubElement(root, "label", name=name)
    ET.indent(root)
    return '<?xml version="1.0" encoding="utf-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def write_dataset(ds, arff_path, labels_xml_path):
    """Write ``ds`` to an ARFF file and its label sidecar; raises OSError on failure."""
    arff_text = format_arff(ds)
    xml_text = format_labels_xml(ds.label_names)
    for path, text in ((arff_path, arff_text), (labels_xml_path, xml_text)):
        with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
