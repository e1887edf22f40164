import csv
import json
import os
from importlib import resources
from typing import Any, Dict, List, Mapping, Tuple

import jsonschema

SCHEMA_PACKAGE = "heisenberg_hsp.experiment"
SCHEMA_RESOURCE = "result_schema.json"


def write_result_document(document: Dict, path) -> str:
    """JSON with a fixed layout and no timestamps, so equal runs give equal bytes."""
    path = str(path)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        json.dump(document, f, indent=4)
        f.write("\n")
    return path


def histogram_paths(out_path) -> Tuple[str, str]:
    stem = os.path.splitext(str(out_path))[0]
    return f"{stem}_rounds.csv", f"{stem}_labels.csv"


def write_histograms(out_path, rounds_hist: Mapping[int, int], label_counts: Mapping[str, int]) -> Tuple[str, str]:
    rounds_file, labels_file = histogram_paths(out_path)
    with open(rounds_file, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["rounds", "trials"])
        for rounds in sorted(rounds_hist):
            writer.writerow([rounds, rounds_hist[rounds]])
    with open(labels_file, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["label", "count"])
        for label in sorted(label_counts):
            writer.writerow([label, label_counts[label]])
    return rounds_file, labels_file


def load_schema(path=None) -> Dict[str, Any]:
    """The result schema shipped with the package, or the one at `path`."""
    if path is None:
        text = resources.files(SCHEMA_PACKAGE).joinpath(SCHEMA_RESOURCE).read_text(encoding="utf-8")
        return json.loads(text)
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _where(error: jsonschema.ValidationError) -> str:
    return "$" + "".join(f"[{part}]" if isinstance(part, int) else f".{part}" for part in error.absolute_path)


def validate_result_document(document: Dict, schema: Dict[str, Any] = None) -> Tuple[bool, List[str]]:
    """
    Check a result document against the shipped schema.

    Returns:
        (is_valid, errors)
    """
    schema = load_schema() if schema is None else schema
    validator = jsonschema.Draft7Validator(schema)
    errors: List[str] = [
        f"{_where(error)}: {error.message}"
        for error in sorted(validator.iter_errors(document), key=lambda e: _where(e))
    ]
    # the schema cannot relate two fields
    if isinstance(document.get("per_trial"), list) and document.get("trials") != len(document["per_trial"]):
        errors.append(f"$.per_trial: {len(document['per_trial'])} records for {document.get('trials')} trials")
    return len(errors) == 0, errors
