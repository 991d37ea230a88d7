"""Self-contained HTML export: graph JSON plus the viewer bundle, inlined.

The viewer is built separately (frontend/); when its bundle is missing the
export degrades to JSON-only with a warning so the rest of the pipeline
never depends on it.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Optional

log = logging.getLogger(__name__)

_BUNDLE_ENV = "TRAJLENS_VIEWER_BUNDLE"
DEFAULT_LAYOUT_SEED = 1729

_TEMPLATE = """<!doctype html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>trajectory graph {title}</title>
<style>
  body {{ margin: 0; font-family: system-ui, sans-serif; background: #fafafa; }}
  #viewer-root {{ width: 100vw; height: 100vh; }}
  .viewer-error {{ color: #c44536; padding: 1rem; font-weight: 600; }}
</style>
</head>
<body>
<div id="viewer-root"></div>
<script id="graph-data" type="application/json">{payload}</script>
<script>
{bundle}
</script>
</body>
</html>
"""


def find_viewer_bundle(explicit: Optional[str | Path] = None) -> Optional[Path]:
    """Locate the built viewer bundle, if any.

    Search order: explicit argument, the TRAJLENS_VIEWER_BUNDLE env var, the
    packaged asset, then a frontend/dist checkout next to the repository.
    """
    candidates = []
    if explicit:
        candidates.append(Path(explicit))
    env = os.environ.get(_BUNDLE_ENV)
    if env:
        candidates.append(Path(env))
    here = Path(__file__).resolve().parent
    candidates.append(here / "assets" / "viewer.js")
    # src/trajlens -> src -> repository root, for editable checkouts
    candidates.append(here.parent.parent / "frontend" / "dist" / "viewer.js")
    for path in candidates:
        if path.is_file():
            return path
    return None


def render_html(graph_doc: dict, bundle_js: str, layout_seed: int = DEFAULT_LAYOUT_SEED) -> str:
    payload = json.dumps(
        {"layout_seed": layout_seed, "graph": graph_doc}, sort_keys=True
    )
    # keep the inline JSON safe inside a <script> element
    payload = payload.replace("</", "<\\/")
    return _TEMPLATE.format(
        title=graph_doc.get("task_id", ""), payload=payload, bundle=bundle_js
    )


def export_html(
    graph_doc: dict,
    out_path: Path,
    bundle_path: Optional[Path] = None,
    layout_seed: int = DEFAULT_LAYOUT_SEED,
) -> Optional[Path]:
    """Write the HTML export, or warn and skip when no bundle is built."""
    bundle = bundle_path if bundle_path is not None else find_viewer_bundle()
    if bundle is None:
        log.warning(
            "viewer bundle not found (build frontend/ or set %s); "
            "skipping HTML export for task %s",
            _BUNDLE_ENV,
            graph_doc.get("task_id"),
        )
        return None
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(render_html(graph_doc, bundle.read_text(), layout_seed))
    return out_path
