#!/usr/bin/env python3
"""Generate the bundled 60-document synthetic training corpus.

30 relevant outbreak-style documents built from bundled ontology terms and
30 irrelevant documents (finance, sport, politics, culture). Deterministic.

Usage: python3 tools/generate_corpus.py > src/healthmonitor/data/corpus.tsv
"""

import random

DISEASES = [
    "cholera", "rabies", "dengue fever", "avian influenza", "bird flu", "measles",
    "equine influenza", "yellow fever", "typhoid fever", "ebola", "malaria",
    "tuberculosis", "whooping cough", "salmonellosis", "chikungunya",
]
PLACES = [
    "Dhaka", "Beijing", "Camden", "Isle of Wight", "Nairobi", "Jakarta", "Lagos",
    "Lima", "Hanoi", "Cairo", "Manila", "Mumbai", "Bangkok", "Australia",
    "China", "Bangladesh", "United Kingdom", "Nigeria",
]
RELEVANT_HEADLINES = [
    "{disease} outbreak reported in {place}",
    "Health officials confirm {disease} cases in {place}",
    "{place} battles spreading {disease}",
    "New {disease} cluster detected near {place}",
    "{disease} alert issued for {place}",
]
RELEVANT_BODIES = [
    "Health authorities in {place} confirmed an outbreak of {disease} this week. "
    "Hospitals reported dozens of suspected cases and surveillance teams were deployed.",
    "An outbreak of {disease} has been detected in {place}. Officials urged residents "
    "to seek treatment early as case counts continue to climb.",
    "Laboratory tests confirmed {disease} in samples collected around {place}. "
    "The ministry of health announced containment measures and contact tracing.",
    "Veterinary and public health workers in {place} are responding to {disease} cases. "
    "Quarantine zones were established while the outbreak investigation continues.",
]
IRRELEVANT_DOCS = [
    ("Central bank raises interest rates", "Policymakers lifted the benchmark rate citing inflation pressure. Markets had priced in the move."),
    ("Championship final ends in penalty shootout", "The home side lifted the trophy after a tense goalless draw and a dramatic shootout."),
    ("Parliament debates budget amendments", "Lawmakers argued over spending priorities ahead of the vote expected next week."),
    ("Tech startup announces record funding round", "Investors poured fresh capital into the company, valuing it far above last year."),
    ("Film festival opens with period drama", "Critics praised the opening feature while crowds queued for premiere tickets."),
    ("Severe storm delays transatlantic flights", "Airlines cancelled departures as high winds battered coastal airports overnight."),
    ("Museum unveils restored renaissance collection", "Curators spent three years restoring the paintings now back on public display."),
    ("Electric carmaker expands factory capacity", "The plant will double output to meet rising demand across export markets."),
    ("Opposition wins regional election", "Early returns showed a clear margin as turnout reached a decade high."),
    ("Chess prodigy wins international tournament", "The teenager defeated the defending champion in the final round."),
    ("Oil prices slip on supply outlook", "Crude futures fell as producers signalled higher output for the next quarter."),
    ("City orchestra tours five countries", "The ensemble performs a program of romantic symphonies on its summer tour."),
    ("Retailer reports strong holiday sales", "Same-store revenue beat forecasts on robust demand for electronics."),
    ("Marathon record falls on fast course", "Cool conditions helped the leaders stay under record pace from the start."),
    ("New bridge cuts commute times", "Engineers opened the span two months early and under budget, officials said."),
]


def main() -> None:
    rng = random.Random(20071111)
    relevant = []
    for i in range(30):
        disease = DISEASES[i % len(DISEASES)]
        place = PLACES[i % len(PLACES)]
        headline = rng.choice(RELEVANT_HEADLINES).format(disease=disease, place=place)
        body = rng.choice(RELEVANT_BODIES).format(disease=disease, place=place)
        relevant.append(("relevant", headline.capitalize(), body))
    irrelevant = []
    for i in range(30):
        headline, body = IRRELEVANT_DOCS[i % len(IRRELEVANT_DOCS)]
        suffix = "" if i < len(IRRELEVANT_DOCS) else f" {rng.choice(['Analysts', 'Observers', 'Commentators'])} expect more news soon."
        irrelevant.append(("irrelevant", headline, body + suffix))

    print("# Synthetic labeled corpus: label<TAB>headline<TAB>body")
    # interleave so every cross-validation fold sees both classes
    for rel, irr in zip(relevant, irrelevant):
        print("\t".join(rel))
        print("\t".join(irr))


if __name__ == "__main__":
    main()
