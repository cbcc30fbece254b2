"""Corpus data model: documents, situation frames, annotations, and output claims.

The on-disk corpus format is line-delimited UTF-8, one tab-separated record
per line, typed by its first field:

    HDR  sf_types=<csv>;annotators=<csv>
    DOC  doc_id  language  genre  [src=<source_doc_id>]
    SEG  doc_id  segment_id  index  text
    SF   frame_id  doc_id  sf_type  [location]  [k=v,k=v,...]
    ANN  annotator_id  doc_id  segment_id  polarity_score  emotions(csv)  source  target

Segment text escapes backslash, tab, and newline as ``\\\\``, ``\\t``, ``\\n``.
Sources are ``author``, ``unspecified``, or ``ent:<id>``; targets are
``frame:<id>`` or ``ent:<id>``. The optional ``src=`` field on DOC marks a
document produced by merge_translations so merged corpora round-trip.

Translation files use:

    TRA   source_doc_id  new_doc_id  language
    TSEG  new_doc_id  index  text

Reference files reuse ANN records under a HDR that declares the annotators.

Parsing and validation are pure functions of their inputs; a Corpus is
treated as immutable after construction and is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable

from .errors import (
    AlignmentError,
    IntegrityError,
    ParseError,
    UnresolvedReferenceError,
)

GENRES = ("tweet", "sms", "news_article", "newswire", "blog")
EMOTIONS = ("fear", "anger", "joy")

POSITIVE = "pos"
NEGATIVE = "neg"

SOURCE_AUTHOR = "author"
SOURCE_UNSPECIFIED = "unspecified"

# Three named categories plus documented placeholders filling out the
# 11-slot default inventory; a corpus HDR's sf_types declaration overrides.
DEFAULT_SF_TYPES = (
    "medical_need",
    "shelter",
    "infrastructure",
    "category_04",
    "category_05",
    "category_06",
    "category_07",
    "category_08",
    "category_09",
    "category_10",
    "category_11",
)


@dataclass(frozen=True)
class Segment:
    segment_id: str
    index: int
    text: str


@dataclass(frozen=True)
class Document:
    doc_id: str
    language: str
    genre: str
    segments: tuple[Segment, ...]
    is_translation: bool = False
    source_doc_id: str | None = None


@dataclass(frozen=True)
class SituationFrame:
    frame_id: str
    doc_id: str
    sf_type: str
    location: str | None = None
    status: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class SentimentAnnotation:
    annotator_id: str
    doc_id: str
    segment_id: str
    polarity_score: float
    emotions: frozenset[str]
    source: str
    target: str


@dataclass(frozen=True)
class SentimentOutput:
    """One system claim: a polarity toward a target, justified by a segment."""

    doc_id: str
    segment_id: str
    polarity: str  # POSITIVE or NEGATIVE
    emotions: frozenset[str]
    source: str
    target: str
    system_id: str = ""


def entity_source(entity_id: str) -> str:
    return f"ent:{entity_id}"


def frame_target(frame_id: str) -> str:
    return f"frame:{frame_id}"


def entity_target(entity_id: str) -> str:
    return f"ent:{entity_id}"


def target_frame_id(target: str) -> str | None:
    """Frame id of a frame target, or None for entity targets."""
    return target[6:] if target.startswith("frame:") else None


def _valid_source(token: str) -> bool:
    return token in (SOURCE_AUTHOR, SOURCE_UNSPECIFIED) or (
        token.startswith("ent:") and len(token) > 4
    )


def _valid_target(token: str) -> bool:
    return (token.startswith("frame:") and len(token) > 6) or (
        token.startswith("ent:") and len(token) > 4
    )


@dataclass
class Corpus:
    documents: tuple[Document, ...]
    frames: tuple[SituationFrame, ...]
    annotations: tuple[SentimentAnnotation, ...]
    sf_type_inventory: tuple[str, ...] = DEFAULT_SF_TYPES
    annotator_ids: tuple[str, ...] = ()

    def __post_init__(self):
        self.documents = tuple(self.documents)
        self.frames = tuple(self.frames)
        self.annotations = tuple(self.annotations)
        self.sf_type_inventory = tuple(self.sf_type_inventory)
        self.annotator_ids = tuple(self.annotator_ids)
        self._doc_index = {d.doc_id: d for d in self.documents}
        self._frame_index = {f.frame_id: f for f in self.frames}
        self._frames_by_doc: dict[str, list[SituationFrame]] = {}
        for f in self.frames:
            self._frames_by_doc.setdefault(f.doc_id, []).append(f)

    def document(self, doc_id: str) -> Document | None:
        return self._doc_index.get(doc_id)

    def frame(self, frame_id: str) -> SituationFrame | None:
        return self._frame_index.get(frame_id)

    def frames_of(self, doc_id: str) -> list[SituationFrame]:
        return self._frames_by_doc.get(doc_id, [])

    def has_segment(self, doc_id: str, segment_id: str) -> bool:
        doc = self._doc_index.get(doc_id)
        return doc is not None and any(s.segment_id == segment_id for s in doc.segments)

    def pair_count(self) -> int:
        """Sum over documents of (frame count x segment count)."""
        return sum(
            len(self._frames_by_doc.get(d.doc_id, ())) * len(d.segments)
            for d in self.documents
        )

    def language_counts(self) -> dict[str, dict[str, int]]:
        """Per-language document / frame / annotation counts."""
        out: dict[str, dict[str, int]] = {}
        for d in self.documents:
            row = out.setdefault(d.language, {"documents": 0, "frames": 0, "annotations": 0})
            row["documents"] += 1
        for f in self.frames:
            doc = self._doc_index.get(f.doc_id)
            if doc is not None:
                out[doc.language]["frames"] += 1
        for a in self.annotations:
            doc = self._doc_index.get(a.doc_id)
            if doc is not None:
                out[doc.language]["annotations"] += 1
        return out


@dataclass(frozen=True)
class Violation:
    record_id: str
    rule: str
    message: str


# -- text escaping ------------------------------------------------------------

def escape_text(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def unescape_text(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            if nxt == "\\":
                out.append("\\")
                i += 2
                continue
            if nxt == "t":
                out.append("\t")
                i += 2
                continue
            if nxt == "n":
                out.append("\n")
                i += 2
                continue
        out.append(c)
        i += 1
    return "".join(out)


# -- parsing ------------------------------------------------------------------

def _parse_header(fields: list[str], line_no: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if len(fields) != 2:
        raise ParseError("HDR record needs exactly one payload field", line_no)
    sf_types: tuple[str, ...] | None = None
    annotators: tuple[str, ...] = ()
    for part in fields[1].split(";"):
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise ParseError(f"malformed header entry {part!r}", line_no)
        items = tuple(v for v in value.split(",") if v)
        if key == "sf_types":
            sf_types = items
        elif key == "annotators":
            annotators = items
        else:
            raise ParseError(f"unknown header key {key!r}", line_no)
    return (sf_types if sf_types is not None else DEFAULT_SF_TYPES), annotators


def _parse_emotions(token: str, line_no: int) -> frozenset[str]:
    if not token:
        return frozenset()
    emotions = token.split(",")
    for e in emotions:
        if e not in EMOTIONS:
            raise ParseError(f"unknown emotion {e!r}", line_no)
    return frozenset(emotions)


def _parse_ann(fields: list[str], line_no: int) -> SentimentAnnotation:
    if len(fields) != 8:
        raise ParseError(f"ANN record needs 8 fields, got {len(fields)}", line_no)
    _, annotator_id, doc_id, segment_id, score_s, emotions_s, source, target = fields
    try:
        score = float(score_s)
    except ValueError:
        raise ParseError(f"bad polarity score {score_s!r}", line_no) from None
    if not _valid_source(source):
        raise ParseError(f"bad source token {source!r}", line_no)
    if not _valid_target(target):
        raise ParseError(f"bad target token {target!r}", line_no)
    return SentimentAnnotation(
        annotator_id=annotator_id,
        doc_id=doc_id,
        segment_id=segment_id,
        polarity_score=score,
        emotions=_parse_emotions(emotions_s, line_no),
        source=source,
        target=target,
    )


def _iter_records(text: str) -> Iterable[tuple[int, list[str]]]:
    for line_no, line in enumerate(text.split("\n"), start=1):
        if not line or line.startswith("#"):
            continue
        yield line_no, line.split("\t")


def parse_corpus(text: str) -> Corpus:
    """Parse corpus-format text into a Corpus with all cross-references checked.

    Raises ParseError (with line number) for malformed records, IntegrityError
    for duplicate ids, and UnresolvedReferenceError naming both ends for
    dangling references. Segment order within a document follows file order.
    """
    sf_types = DEFAULT_SF_TYPES
    annotators: tuple[str, ...] = ()
    doc_rows: list[tuple[str, str, str, str | None]] = []
    seg_rows: dict[str, list[Segment]] = {}
    frames: list[SituationFrame] = []
    annotations: list[tuple[int, SentimentAnnotation]] = []

    seen_docs: set[str] = set()
    seen_frames: set[str] = set()

    for line_no, fields in _iter_records(text):
        kind = fields[0]
        if kind == "HDR":
            sf_types, annotators = _parse_header(fields, line_no)
        elif kind == "DOC":
            if len(fields) not in (4, 5):
                raise ParseError(f"DOC record needs 4 fields, got {len(fields)}", line_no)
            doc_id, language, genre = fields[1], fields[2], fields[3]
            source_doc: str | None = None
            if len(fields) == 5:
                if not fields[4].startswith("src="):
                    raise ParseError(f"unexpected DOC field {fields[4]!r}", line_no)
                source_doc = fields[4][4:]
            if genre not in GENRES:
                raise ParseError(f"unknown genre {genre!r}", line_no)
            if not doc_id:
                raise ParseError("empty doc_id", line_no)
            if doc_id in seen_docs:
                raise IntegrityError(f"duplicate doc_id {doc_id!r}")
            seen_docs.add(doc_id)
            doc_rows.append((doc_id, language, genre, source_doc))
        elif kind == "SEG":
            if len(fields) != 5:
                raise ParseError(f"SEG record needs 5 fields, got {len(fields)}", line_no)
            _, doc_id, segment_id, index_s, raw = fields
            try:
                index = int(index_s)
            except ValueError:
                raise ParseError(f"bad segment index {index_s!r}", line_no) from None
            segs = seg_rows.setdefault(doc_id, [])
            if any(s.segment_id == segment_id for s in segs):
                raise IntegrityError(
                    f"duplicate segment_id {segment_id!r} in document {doc_id!r}"
                )
            segs.append(Segment(segment_id, index, unescape_text(raw)))
            seg_line[f"{doc_id}/{segment_id}"] = line_no
        elif kind == "SF":
            if len(fields) not in (4, 5, 6):
                raise ParseError(f"SF record needs 4-6 fields, got {len(fields)}", line_no)
            frame_id, doc_id, sf_type = fields[1], fields[2], fields[3]
            location = fields[4] if len(fields) >= 5 and fields[4] else None
            status: tuple[tuple[str, str], ...] = ()
            if len(fields) == 6 and fields[5]:
                pairs = []
                for kv in fields[5].split(","):
                    key, sep, value = kv.partition("=")
                    if not sep:
                        raise ParseError(f"malformed status entry {kv!r}", line_no)
                    pairs.append((key, value))
                status = tuple(pairs)
            if frame_id in seen_frames:
                raise IntegrityError(f"duplicate frame_id {frame_id!r}")
            seen_frames.add(frame_id)
            frames.append(SituationFrame(frame_id, doc_id, sf_type, location, status))
        elif kind == "ANN":
            annotations.append((line_no, _parse_ann(fields, line_no)))
        elif kind in ("TRA", "TSEG"):
            raise ParseError(f"{kind} records belong in a translation file", line_no)
        else:
            raise ParseError(f"unknown record kind {fields[0]!r}", line_no)

    documents = []
    for doc_id, language, genre, source_doc in doc_rows:
        documents.append(
            Document(
                doc_id=doc_id,
                language=language,
                genre=genre,
                segments=tuple(seg_rows.pop(doc_id, ())),
                is_translation=source_doc is not None,
                source_doc_id=source_doc,
            )
        )
    if seg_rows:
        doc_id = next(iter(seg_rows))
        seg = seg_rows[doc_id][0]
        raise UnresolvedReferenceError(
            f"segment {seg.segment_id!r} references unknown document {doc_id!r}"
        )

    corpus = Corpus(
        documents=tuple(documents),
        frames=tuple(frames),
        annotations=tuple(a for _, a in annotations),
        sf_type_inventory=sf_types,
        annotator_ids=annotators,
    )

    for doc in corpus.documents:
        if doc.is_translation and corpus.document(doc.source_doc_id or "") is None:
            raise UnresolvedReferenceError(
                f"document {doc.doc_id!r} names unknown source document "
                f"{doc.source_doc_id!r}"
            )
    for f in corpus.frames:
        if corpus.document(f.doc_id) is None:
            raise UnresolvedReferenceError(
                f"frame {f.frame_id!r} references unknown document {f.doc_id!r}"
            )
    for _, ann in annotations:
        _resolve_annotation(corpus, ann)
    return corpus


def _resolve_annotation(corpus: Corpus, ann: SentimentAnnotation) -> None:
    if corpus.document(ann.doc_id) is None:
        raise UnresolvedReferenceError(
            f"annotation by {ann.annotator_id!r} references unknown document {ann.doc_id!r}"
        )
    if not corpus.has_segment(ann.doc_id, ann.segment_id):
        raise UnresolvedReferenceError(
            f"annotation by {ann.annotator_id!r} references missing segment "
            f"{ann.segment_id!r} in document {ann.doc_id!r}"
        )
    fid = target_frame_id(ann.target)
    if fid is not None:
        frame = corpus.frame(fid)
        if frame is None:
            raise UnresolvedReferenceError(
                f"annotation on {ann.doc_id!r}/{ann.segment_id!r} targets unknown "
                f"frame {fid!r}"
            )
        if frame.doc_id != ann.doc_id:
            raise UnresolvedReferenceError(
                f"annotation on document {ann.doc_id!r} targets frame {fid!r} "
                f"of document {frame.doc_id!r}"
            )


def load_corpus(path: str | Path) -> Corpus:
    return parse_corpus(Path(path).read_bytes().decode("utf-8"))


# -- serialization ------------------------------------------------------------

def _format_score(score: float) -> str:
    # polarity grid values print as short decimals (-2.5, 1.0, ...)
    return f"{score:g}"


def serialize_corpus(corpus: Corpus) -> str:
    lines = [
        "HDR\tsf_types={};annotators={}".format(
            ",".join(corpus.sf_type_inventory), ",".join(corpus.annotator_ids)
        )
    ]
    for doc in corpus.documents:
        row = f"DOC\t{doc.doc_id}\t{doc.language}\t{doc.genre}"
        if doc.is_translation:
            row += f"\tsrc={doc.source_doc_id}"
        lines.append(row)
        for seg in doc.segments:
            lines.append(
                f"SEG\t{doc.doc_id}\t{seg.segment_id}\t{seg.index}\t{escape_text(seg.text)}"
            )
    for f in corpus.frames:
        status = ",".join(f"{k}={v}" for k, v in f.status)
        lines.append(
            f"SF\t{f.frame_id}\t{f.doc_id}\t{f.sf_type}\t{f.location or ''}\t{status}"
        )
    for a in corpus.annotations:
        lines.append(serialize_annotation(a))
    return "\n".join(lines) + "\n"


def serialize_annotation(a: SentimentAnnotation) -> str:
    emotions = ",".join(sorted(a.emotions))
    return (
        f"ANN\t{a.annotator_id}\t{a.doc_id}\t{a.segment_id}\t"
        f"{_format_score(a.polarity_score)}\t{emotions}\t{a.source}\t{a.target}"
    )


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    Path(path).write_bytes(serialize_corpus(corpus).encode("utf-8"))


# -- validation ---------------------------------------------------------------

def _on_grid(score: float) -> bool:
    doubled = score * 2.0
    return (
        abs(doubled - round(doubled)) < 1e-9
        and abs(score) > 1e-9
        and -3.0 <= score <= 3.0
    )


def validate_corpus(corpus: Corpus) -> list[Violation]:
    """Check every type invariant; violations are data, never exceptions."""
    violations: list[Violation] = []

    def add(record_id: str, rule: str, message: str) -> None:
        violations.append(Violation(record_id, rule, message))

    seen_docs: set[str] = set()
    for doc in corpus.documents:
        if not doc.doc_id:
            add(doc.doc_id, "doc_id_nonempty", "document with empty id")
        if doc.doc_id in seen_docs:
            add(doc.doc_id, "doc_id_unique", f"duplicate doc_id {doc.doc_id!r}")
        seen_docs.add(doc.doc_id)
        if not doc.segments:
            add(doc.doc_id, "doc_segments_nonempty", "document has no segments")
        if doc.genre == "tweet" and len(doc.segments) != 1:
            add(
                doc.doc_id,
                "tweet_single_segment",
                f"tweet has {len(doc.segments)} segments",
            )
        indices = [s.index for s in doc.segments]
        if indices != list(range(len(indices))):
            add(doc.doc_id, "segment_index_contiguous", f"segment indices {indices}")
        seen_segs: set[str] = set()
        for seg in doc.segments:
            if seg.segment_id in seen_segs:
                add(
                    f"{doc.doc_id}/{seg.segment_id}",
                    "segment_id_unique",
                    "duplicate segment_id within document",
                )
            seen_segs.add(seg.segment_id)
            if not seg.text.strip():
                add(
                    f"{doc.doc_id}/{seg.segment_id}",
                    "segment_text_nonempty",
                    "segment text empty after trim",
                )
        if doc.is_translation:
            if not doc.source_doc_id or corpus.document(doc.source_doc_id) is None:
                add(
                    doc.doc_id,
                    "translation_source",
                    f"translation source {doc.source_doc_id!r} unresolvable",
                )

    inventory = set(corpus.sf_type_inventory)
    seen_frames: set[str] = set()
    for f in corpus.frames:
        if f.frame_id in seen_frames:
            add(f.frame_id, "frame_id_unique", f"duplicate frame_id {f.frame_id!r}")
        seen_frames.add(f.frame_id)
        if corpus.document(f.doc_id) is None:
            add(f.frame_id, "frame_doc", f"frame document {f.doc_id!r} unresolvable")
        if f.sf_type not in inventory:
            add(f.frame_id, "sf_type_inventory", f"sf_type {f.sf_type!r} not in inventory")

    for i, a in enumerate(corpus.annotations):
        rid = f"ann[{i}]:{a.annotator_id}/{a.doc_id}/{a.segment_id}"
        if not _on_grid(a.polarity_score):
            add(rid, "polarity_grid", f"score {a.polarity_score} off the 0.5 grid")
        if not a.emotions <= set(EMOTIONS):
            add(rid, "emotion_vocab", f"unknown emotions {sorted(a.emotions)}")
        if not corpus.has_segment(a.doc_id, a.segment_id):
            add(rid, "ann_segment", f"segment {a.segment_id!r} unresolvable")
        fid = target_frame_id(a.target)
        if fid is not None:
            frame = corpus.frame(fid)
            if frame is None:
                add(rid, "ann_frame_target", f"target frame {fid!r} unresolvable")
            elif frame.doc_id != a.doc_id:
                add(
                    rid,
                    "ann_frame_target",
                    f"target frame {fid!r} belongs to document {frame.doc_id!r}",
                )
    return violations


# -- translations -------------------------------------------------------------

@dataclass(frozen=True)
class TranslationRecord:
    source_doc_id: str
    new_doc_id: str
    language: str
    texts: tuple[str, ...]


def parse_translations(text: str) -> list[TranslationRecord]:
    heads: list[tuple[str, str, str]] = []
    seg_texts: dict[str, dict[int, str]] = {}
    declared: set[str] = set()
    for line_no, fields in _iter_records(text):
        kind = fields[0]
        if kind == "TRA":
            if len(fields) != 4:
                raise ParseError(f"TRA record needs 4 fields, got {len(fields)}", line_no)
            _, source_doc_id, new_doc_id, language = fields
            if new_doc_id in declared:
                raise IntegrityError(f"duplicate translation doc_id {new_doc_id!r}")
            declared.add(new_doc_id)
            heads.append((source_doc_id, new_doc_id, language))
        elif kind == "TSEG":
            if len(fields) != 4:
                raise ParseError(f"TSEG record needs 4 fields, got {len(fields)}", line_no)
            _, new_doc_id, index_s, raw = fields
            try:
                index = int(index_s)
            except ValueError:
                raise ParseError(f"bad TSEG index {index_s!r}", line_no) from None
            slot = seg_texts.setdefault(new_doc_id, {})
            if index in slot:
                raise IntegrityError(
                    f"duplicate TSEG index {index} for translation {new_doc_id!r}"
                )
            slot[index] = unescape_text(raw)
        else:
            raise ParseError(f"unexpected record kind {kind!r} in translation file", line_no)

    records = []
    for source_doc_id, new_doc_id, language in heads:
        by_index = seg_texts.pop(new_doc_id, {})
        if sorted(by_index) != list(range(len(by_index))):
            raise ParseError(
                f"TSEG indices for {new_doc_id!r} are not contiguous from 0"
            )
        records.append(
            TranslationRecord(
                source_doc_id,
                new_doc_id,
                language,
                tuple(by_index[i] for i in range(len(by_index))),
            )
        )
    if seg_texts:
        orphan = next(iter(seg_texts))
        raise UnresolvedReferenceError(
            f"TSEG records reference undeclared translation {orphan!r}"
        )
    return records


def merge_translations(corpus: Corpus, translations: str | list[TranslationRecord]) -> Corpus:
    """Append translated documents, cloning the sources' frames and annotations.

    Alignment is strict 1:1 by segment index; cloned segments keep the source
    segment_ids and cloned frames get ``<frame_id>@<new_doc_id>``. The input
    corpus is not modified.
    """
    records = (
        parse_translations(translations) if isinstance(translations, str) else translations
    )
    documents = list(corpus.documents)
    frames = list(corpus.frames)
    annotations = list(corpus.annotations)
    doc_ids = {d.doc_id for d in documents}
    frame_ids = {f.frame_id for f in frames}

    for rec in records:
        source = corpus.document(rec.source_doc_id)
        if source is None:
            raise UnresolvedReferenceError(
                f"translation {rec.new_doc_id!r} names unknown source document "
                f"{rec.source_doc_id!r}"
            )
        if rec.new_doc_id in doc_ids:
            raise IntegrityError(f"duplicate doc_id {rec.new_doc_id!r}")
        if len(rec.texts) != len(source.segments):
            raise AlignmentError(
                f"translation {rec.new_doc_id!r} has {len(rec.texts)} segments, "
                f"source {rec.source_doc_id!r} has {len(source.segments)}"
            )
        doc_ids.add(rec.new_doc_id)
        documents.append(
            Document(
                doc_id=rec.new_doc_id,
                language=rec.language,
                genre=source.genre,
                segments=tuple(
                    Segment(seg.segment_id, seg.index, new_text)
                    for seg, new_text in zip(source.segments, rec.texts)
                ),
                is_translation=True,
                source_doc_id=source.doc_id,
            )
        )
        frame_map: dict[str, str] = {}
        for f in corpus.frames_of(source.doc_id):
            new_fid = f"{f.frame_id}@{rec.new_doc_id}"
            if new_fid in frame_ids:
                raise IntegrityError(f"duplicate frame_id {new_fid!r}")
            frame_ids.add(new_fid)
            frame_map[f.frame_id] = new_fid
            frames.append(replace(f, frame_id=new_fid, doc_id=rec.new_doc_id))
        for a in corpus.annotations:
            if a.doc_id != source.doc_id:
                continue
            fid = target_frame_id(a.target)
            target = frame_target(frame_map[fid]) if fid is not None else a.target
            annotations.append(replace(a, doc_id=rec.new_doc_id, target=target))

    return Corpus(
        documents=tuple(documents),
        frames=tuple(frames),
        annotations=tuple(annotations),
        sf_type_inventory=corpus.sf_type_inventory,
        annotator_ids=corpus.annotator_ids,
    )


# -- reference files ----------------------------------------------------------

def parse_reference(text: str) -> dict[str, list[SentimentAnnotation]]:
    """Parse a reference file into per-annotator annotation lists.

    The HDR must declare the annotators; a record naming an undeclared
    annotator is an integrity error.
    """
    annotators: tuple[str, ...] = ()
    saw_header = False
    by_annotator: dict[str, list[SentimentAnnotation]] = {}
    for line_no, fields in _iter_records(text):
        kind = fields[0]
        if kind == "HDR":
            _, annotators = _parse_header(fields, line_no)
            saw_header = True
            by_annotator = {a: [] for a in annotators}
        elif kind == "ANN":
            ann = _parse_ann(fields, line_no)
            if not saw_header:
                raise ParseError("ANN record before HDR in reference file", line_no)
            if ann.annotator_id not in by_annotator:
                raise IntegrityError(
                    f"annotator {ann.annotator_id!r} not declared in reference header"
                )
            by_annotator[ann.annotator_id].append(ann)
        else:
            raise ParseError(f"unexpected record kind {kind!r} in reference file", line_no)
    if not saw_header:
        raise ParseError("reference file has no HDR record")
    return by_annotator


def load_reference(path: str | Path) -> dict[str, list[SentimentAnnotation]]:
    return parse_reference(Path(path).read_bytes().decode("utf-8"))


def serialize_reference(by_annotator: dict[str, list[SentimentAnnotation]]) -> str:
    lines = ["HDR\tsf_types=;annotators=" + ",".join(by_annotator)]
    for annotator in by_annotator:
        for a in by_annotator[annotator]:
            lines.append(serialize_annotation(a))
    return "\n".join(lines) + "\n"
