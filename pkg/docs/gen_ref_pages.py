"""Reference pages for the public pyqest modules."""

from pathlib import Path

import mkdocs_gen_files

SKIP = {"__main__"}

nav = mkdocs_gen_files.Nav()

for path in sorted(Path("src", "pyqest").rglob("*.py")):
    module_path = path.relative_to("src").with_suffix("")
    parts = tuple(module_path.parts)
    if parts[-1] in SKIP or parts[-1].startswith("_") and parts[-1] != "__init__":
        continue
    if parts[-1] == "__init__":
        parts = parts[:-1]

    doc_path = Path(*parts).with_suffix(".md")
    nav[parts] = doc_path.as_posix()
    with mkdocs_gen_files.open(Path("reference", doc_path), "w") as fd:
        fd.write(f"# `{'.'.join(parts)}`\n\n::: {'.'.join(parts)}\n")
    mkdocs_gen_files.set_edit_path(Path("reference", doc_path), path)

with mkdocs_gen_files.open("reference/SUMMARY.md", "w") as nav_file:
    nav_file.writelines(nav.build_literate_nav())
