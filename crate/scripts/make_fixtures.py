#!/usr/bin/env python3
"""Regenerates the bundled fixtures under data/.

Golden outputs (data/golden/) are not produced here; they are frozen from a
reviewed `drugwatch ingest` run, see README.
"""
import json
import random
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"

DRUGS = [
    "aspirin", "ibuprofen", "acetaminophen", "metformin", "warfarin", "amoxicillin", "lisinopril",
    "carbamazepine", "allopurinol", "vancomycin", "methotrexate", "isoniazid", "clozapine", "lamotrigine",
    "heparin", "atorvastatin", "ciprofloxacin", "phenytoin", "valproic acid", "nivolumab",
    "pembrolizumab", "tacrolimus", "amiodarone",
]
DRUG_SYNONYMS = {
    "paracetamol": "acetaminophen", "tylenol": "acetaminophen", "asa": "aspirin",
    "acetylsalicylic acid": "aspirin", "coumadin": "warfarin", "depakote": "valproic acid",
    "keytruda": "pembrolizumab", "opdivo": "nivolumab", "lipitor": "atorvastatin",
}
EFFECTS = [
    "rash", "nausea", "liver failure", "hepatotoxicity", "stevens-johnson syndrome",
    "toxic epidermal necrolysis", "agranulocytosis", "thrombocytopenia", "rhabdomyolysis",
    "lactic acidosis", "angioedema", "anaphylaxis", "bleeding", "acute kidney injury", "pancreatitis",
    "myocarditis", "hypothyroidism", "qt prolongation", "seizures", "hyponatremia", "neutropenia",
    "interstitial lung disease", "colitis", "tendon rupture",
    "drug reaction with eosinophilia and systemic symptoms",
]
EFFECT_SYNONYMS = {
    "ten": "toxic epidermal necrolysis", "sjs": "stevens-johnson syndrome", "aki": "acute kidney injury",
    "dress": "drug reaction with eosinophilia and systemic symptoms", "liver injury": "hepatotoxicity",
    "hemorrhage": "bleeding",
}
CONDITIONS = [
    "hypertension", "type 2 diabetes", "atrial fibrillation", "epilepsy", "gout", "pneumonia",
    "rheumatoid arthritis", "schizophrenia", "tuberculosis", "metastatic melanoma", "osteoarthritis",
    "bipolar disorder", "a urinary tract infection", "hyperlipidemia",
]
# (age phrase, subject noun) pairs; None means no demographic mention.
SUBJECTS = [
    ("6-year-old", "boy"), ("45-year-old", "woman"), ("72-year-old", "man"), ("3-month-old", "girl"),
    ("elderly", "man"), ("elderly", "woman"), ("34-year-old", "man"), ("58-year-old", "woman"),
    ("16-year-old", "girl"), ("adolescent", "boy"), ("28-year-old", "woman"), ("81-year-old", "man"),
    (None, "woman"), (None, "man"), (None, "patient"), ("9-year-old", "boy"),
]
ONSET = ["two days", "one week", "three weeks", "10 days", "several months", "48 hours"]
DOSES = ["", " 100 mg", " 500 mg daily", " 20 mg", ""]


def subject_phrase(age, noun):
    if age is None:
        return "A " + noun if noun != "patient" else "The patient"
    article = "An" if age[0] in "aeiou8" or age.startswith("11") or age.startswith("18") else "A"
    return f"{article} {age} {noun}"


def ade_sentence(rng, subj, drug, effect):
    age, noun = subj
    who = subject_phrase(age, noun)
    pattern = rng.randrange(4)
    if pattern == 0:
        return f"{who} developed {effect} {rng.choice(ONSET)} after starting {drug}."
    if pattern == 1:
        return f"{who} receiving {drug}{rng.choice(DOSES)} presented with {effect}."
    if pattern == 2:
        return f"{who} was diagnosed with {drug}-induced {effect}."
    return f"{who} experienced {effect} during treatment with {drug}."


def article(rng, pmid, year, drugs, effects, subj, extra_sentences=True):
    condition = rng.choice(CONDITIONS)
    sentences = [f"We report a case of {effects[0]} associated with {drugs[0]} therapy." if rng.random() < 0.3
                 else f"Background: {condition.capitalize()} is commonly managed in primary care."]
    sentences.append(ade_sentence(rng, subj, drugs[0], effects[0]))
    if len(drugs) > 1:
        sentences.append(f"Concomitant {drugs[1]} was also associated with {effects[1]}.")
    elif len(effects) > 1:
        sentences.append(f"Subsequently, {effects[1]} was noted after {drugs[0]} was continued.")
    if extra_sentences:
        sentences.append(rng.choice([
            f"{drugs[0].capitalize()} was discontinued and the symptoms resolved within two weeks.",
            "Laboratory tests were otherwise within normal limits.",
            "The patient was managed with supportive care and recovered fully.",
            "Written informed consent was obtained from the patient.",
        ]))
        sentences.append(rng.choice([
            "Clinicians should be aware of this rare adverse reaction.",
            "This case highlights the importance of careful monitoring, e.g. regular laboratory tests.",
            "To our knowledge, few similar cases have been described by Smith et al. in the literature.",
            "Prompt recognition of this side effect is essential.",
        ]))
    title = f"{effects[0].capitalize()} associated with {drugs[0]}: a case report"
    return {
        "pmid": str(pmid), "title": title, "abstract": " ".join(sentences), "year": year,
        "keywords": [drugs[0], effects[0], "adverse drug reaction"], "language": "eng",
        "pub_types": ["Journal Article", "Case Reports"],
    }


def corpus50():
    rng = random.Random(20240501)
    records = []
    planted = [
        # aspirin + liver failure appears in exactly two articles.
        article(rng, 31000001, 2019, ["aspirin"], ["liver failure"], ("6-year-old", "boy")),
        article(rng, 31000002, 2021, ["aspirin", "ibuprofen"], ["liver failure", "nausea"], ("45-year-old", "woman")),
        article(rng, 31000003, 2019, ["aspirin"], ["rash", "nausea"], ("elderly", "man")),
        article(rng, 31000004, 2020, ["paracetamol"], ["hepatotoxicity"], ("16-year-old", "girl")),
        article(rng, 31000005, 2018, ["carbamazepine"], ["TEN"], ("34-year-old", "man")),
        article(rng, 31000006, 2022, ["Coumadin"], ["bleeding"], ("81-year-old", "man")),
    ]
    # Articles without any extractable drug and effect pair.
    planted.append({
        "pmid": "31000007", "title": "Management of refractory gout: a case report",
        "abstract": "A 58-year-old man had a history of gout. He was referred to our clinic for evaluation of "
                    "recurrent flares and started colchicine. Laboratory tests were within normal limits. "
                    "Follow-up visits were scheduled every three months.",
        "year": 2017, "keywords": ["gout"], "language": "eng", "pub_types": ["Case Reports"],
    })
    planted.append({
        "pmid": "31000008", "title": "An unusual presentation of pneumonia",
        "abstract": "A woman in her sixties was referred to our clinic for evaluation of pneumonia. "
                    "Chest imaging showed a lobar infiltrate. Physical examination was otherwise unremarkable. "
                    "Follow-up visits were scheduled every three months.",
        "year": 2016, "keywords": [], "language": "eng", "pub_types": ["Case Reports"],
    })
    records.extend(planted)
    pmid = 31000100
    while len(records) < 47:
        pmid += rng.randrange(1, 40)
        n_drugs = 2 if rng.random() < 0.2 else 1
        drugs = rng.sample([d for d in DRUGS if d != "aspirin"] + list(DRUG_SYNONYMS)[:4], n_drugs)
        effects = rng.sample([e for e in EFFECTS if e != "liver failure"] + list(EFFECT_SYNONYMS)[:3],
                             2 if (n_drugs == 2 or rng.random() < 0.3) else 1)
        records.append(article(rng, pmid, rng.randrange(2005, 2024), drugs, effects, rng.choice(SUBJECTS)))
    # Three records the ingest filters reject.
    records.append({**article(rng, 31000901, 2015, ["heparin"], ["thrombocytopenia"], ("72-year-old", "man")),
                    "language": "ger"})
    records.append({**article(rng, 31000902, 2014, ["lisinopril"], ["angioedema"], ("58-year-old", "woman")),
                    "abstract": ""})
    records.append({**article(rng, 31000903, 2013, ["vancomycin"], ["acute kidney injury"], ("81-year-old", "man")),
                    "pub_types": ["Journal Article", "Review"]})
    rng.shuffle(records)
    return records


def small5():
    rng = random.Random(5)
    return [
        article(rng, 100, 2020, ["aspirin"], ["rash"], ("6-year-old", "boy")),
        {**article(rng, 101, 2019, ["ibuprofen"], ["nausea"], (None, "woman")), "abstract": ""},
        {**article(rng, 102, 2018, ["metformin"], ["lactic acidosis"], ("72-year-old", "man")), "language": "fre"},
        article(rng, 103, 2021, ["warfarin"], ["bleeding"], ("elderly", "woman")),
        article(rng, 104, 2022, ["aspirin", "ibuprofen"], ["rash", "nausea"], ("45-year-old", "woman")),
    ]


def training_set():
    rng = random.Random(7)
    pos, neg = [], []
    for _ in range(60):
        d, e = rng.choice(DRUGS), rng.choice(EFFECTS)
        pos.append(rng.choice([
            f"{e.capitalize()} developed after {d} was started.",
            f"The patient experienced {e} induced by {d}.",
            f"Treatment with {d} was complicated by {e}.",
            f"{d.capitalize()}-associated {e} resolved after withdrawal of the drug.",
            f"We describe a severe adverse reaction, {e}, attributed to {d}.",
            f"Rechallenge with {d} caused recurrent {e}.",
        ]))
    for _ in range(60):
        d, c = rng.choice(DRUGS), rng.choice(CONDITIONS)
        neg.append(rng.choice([
            f"The patient had a history of {c}.",
            f"{c.capitalize()} is commonly managed in primary care.",
            "Laboratory tests were within normal limits.",
            "Written informed consent was obtained from the patient.",
            f"The study design and trial protocol were approved by the ethics committee.",
            f"He was referred to our clinic for evaluation of {c}.",
            "Physical examination was unremarkable.",
            f"Chest imaging showed no abnormality.",
            f"The prevalence of {c} is increasing worldwide.",
            "Follow-up visits were scheduled every three months.",
        ]))
    rows = [{"text": t, "label": True} for t in pos] + [{"text": t, "label": False} for t in neg]
    rng.shuffle(rows)
    return rows


PHEE = [
    ("A 6-year-old boy developed rash after aspirin.",
     [("ADE", {"subject": ["A 6-year-old boy"], "subject.age": ["6-year-old"], "subject.gender": ["boy"],
               "treatment": ["aspirin"], "treatment.drug": ["aspirin"], "effect": ["rash"]})],
     [("ADE", {"subject": ["A 6-year-old boy"], "subject.age": ["6-year-old"], "treatment": ["aspirin"],
               "treatment.drug": ["aspirin"], "effect": ["rash"]})],
     [("ADE", {"subject": ["boy"], "treatment.drug": ["aspirin"], "treatment": ["aspirin"], "effect": ["rash"]})]),
    ("Metformin 500 mg twice daily improved glycemic control in a 54-year-old woman.",
     [("PTE", {"subject": ["a 54-year-old woman"], "subject.age": ["54-year-old"], "subject.gender": ["woman"],
               "treatment": ["Metformin 500 mg twice daily"], "treatment.drug": ["Metformin"],
               "treatment.dosage": ["500 mg"], "treatment.frequency": ["twice daily"],
               "effect": ["improved glycemic control"]})],
     [("PTE", {"subject": ["a 54-year-old woman"], "subject.age": ["54-year-old"],
               "treatment": ["Metformin 500 mg twice daily"], "treatment.drug": ["Metformin"],
               "treatment.dosage": ["500 mg"], "effect": ["glycemic control"]})],
     [("PTE", {"treatment": ["Metformin"], "treatment.drug": ["Metformin"], "effect": ["improved glycemic control"]})]),
    ("Toxic epidermal necrolysis occurred in an elderly man three weeks after starting carbamazepine.",
     [("ADE", {"subject": ["an elderly man"], "subject.age": ["elderly"], "subject.gender": ["man"],
               "treatment": ["carbamazepine"], "treatment.drug": ["carbamazepine"],
               "treatment.time_elapsed": ["three weeks"], "effect": ["Toxic epidermal necrolysis"]})],
     [("ADE", {"subject": ["an elderly man"], "subject.age": ["elderly"], "treatment": ["carbamazepine"],
               "treatment.drug": ["carbamazepine"], "effect": ["Toxic epidermal necrolysis"]})],
     [("ADE", {"subject": ["elderly man"], "subject.age": ["elderly"], "treatment": ["carbamazepine"],
               "treatment.drug": ["carbamazepine"], "treatment.time_elapsed": ["three weeks"],
               "effect": ["epidermal necrolysis"]})]),
    ("Intravenous vancomycin was associated with acute kidney injury in patients with sepsis.",
     [("ADE", {"subject": ["patients with sepsis"], "subject.disorder": ["sepsis"],
               "treatment": ["Intravenous vancomycin"], "treatment.drug": ["vancomycin"],
               "treatment.route": ["Intravenous"], "effect": ["acute kidney injury"]})],
     [("ADE", {"subject": ["patients with sepsis"], "treatment": ["Intravenous vancomycin"],
               "treatment.drug": ["vancomycin"], "treatment.route": ["Intravenous"],
               "effect": ["acute kidney injury"]})],
     [("ADE", {"treatment": ["vancomycin"], "treatment.drug": ["vancomycin"], "effect": ["kidney injury"]})]),
    ("A 34-year-old woman on lamotrigine and valproic acid developed Stevens-Johnson syndrome.",
     [("ADE", {"subject": ["A 34-year-old woman"], "subject.age": ["34-year-old"], "subject.gender": ["woman"],
               "treatment": ["lamotrigine and valproic acid"], "treatment.drug": ["lamotrigine", "valproic acid"],
               "treatment.combination": ["lamotrigine and valproic acid"],
               "effect": ["Stevens-Johnson syndrome"]})],
     [("ADE", {"subject": ["A 34-year-old woman"], "subject.age": ["34-year-old"], "subject.gender": ["woman"],
               "treatment": ["lamotrigine and valproic acid"], "treatment.drug": ["lamotrigine", "valproic acid"],
               "effect": ["Stevens-Johnson syndrome"]})],
     [("ADE", {"subject": ["woman"], "subject.gender": ["woman"], "treatment": ["lamotrigine"],
               "treatment.drug": ["lamotrigine"], "effect": ["Stevens-Johnson syndrome"]})]),
    ("Clozapine-induced myocarditis was diagnosed in a 28-year-old man with schizophrenia.",
     [("ADE", {"subject": ["a 28-year-old man with schizophrenia"], "subject.age": ["28-year-old"],
               "subject.gender": ["man"], "subject.disorder": ["schizophrenia"], "treatment": ["Clozapine"],
               "treatment.drug": ["Clozapine"], "effect": ["myocarditis"]})],
     [("ADE", {"subject": ["a 28-year-old man"], "subject.age": ["28-year-old"], "subject.gender": ["man"],
               "treatment": ["Clozapine"], "treatment.drug": ["Clozapine"], "effect": ["myocarditis"]})],
     [("ADE", {"subject": ["28-year-old man with schizophrenia"], "subject.age": ["28-year-old"],
               "treatment": ["Clozapine"], "treatment.drug": ["Clozapine"], "effect": ["myocarditis"]})]),
    ("Warfarin therapy was complicated by severe bleeding in a woman in her seventies.",
     [("ADE", {"subject": ["a woman in her seventies"], "subject.age": ["in her seventies"],
               "subject.gender": ["woman"], "treatment": ["Warfarin therapy"], "treatment.drug": ["Warfarin"],
               "effect": ["severe bleeding"]})],
     [("ADE", {"subject": ["a woman in her seventies"], "subject.age": ["in her seventies"],
               "treatment": ["Warfarin therapy"], "treatment.drug": ["Warfarin"], "effect": ["bleeding"]})],
     [("ADE", {"treatment": ["Warfarin"], "treatment.drug": ["Warfarin"], "effect": ["severe bleeding"]})]),
    ("Oral isoniazid 300 mg daily for six months led to hepatotoxicity.",
     [("ADE", {"treatment": ["Oral isoniazid 300 mg daily for six months"], "treatment.drug": ["isoniazid"],
               "treatment.route": ["Oral"], "treatment.dosage": ["300 mg"], "treatment.frequency": ["daily"],
               "treatment.duration": ["six months"], "effect": ["hepatotoxicity"]})],
     [("ADE", {"treatment": ["Oral isoniazid 300 mg daily"], "treatment.drug": ["isoniazid"],
               "treatment.route": ["Oral"], "treatment.dosage": ["300 mg"], "treatment.frequency": ["daily"],
               "effect": ["hepatotoxicity"]})],
     [("ADE", {"treatment": ["isoniazid"], "treatment.drug": ["isoniazid"],
               "treatment.duration": ["six months"], "effect": ["hepatotoxicity"]})]),
    ("Allopurinol reduced serum urate levels in a 61-year-old man with gout.",
     [("PTE", {"subject": ["a 61-year-old man with gout"], "subject.age": ["61-year-old"], "subject.gender": ["man"],
               "subject.disorder": ["gout"], "treatment": ["Allopurinol"], "treatment.drug": ["Allopurinol"],
               "effect": ["reduced serum urate levels"]})],
     [("PTE", {"subject": ["a 61-year-old man with gout"], "subject.age": ["61-year-old"],
               "treatment": ["Allopurinol"], "treatment.drug": ["Allopurinol"],
               "effect": ["reduced serum urate levels"]})],
     []),
    ("Two infants developed agranulocytosis after receiving metamizole.",
     [("ADE", {"subject": ["Two infants"], "subject.population": ["Two"], "subject.age": ["infants"],
               "treatment": ["metamizole"], "treatment.drug": ["metamizole"], "effect": ["agranulocytosis"]})],
     [("ADE", {"subject": ["Two infants"], "subject.age": ["infants"], "treatment": ["metamizole"],
               "treatment.drug": ["metamizole"], "effect": ["agranulocytosis"]})],
     [("ADE", {"subject": ["infants"], "subject.population": ["Two"], "treatment": ["metamizole"],
               "treatment.drug": ["metamizole"], "effect": ["agranulocytosis"]})]),
    ("Rhabdomyolysis was observed in an Asian man taking atorvastatin with ciprofloxacin.",
     [("ADE", {"subject": ["an Asian man"], "subject.race": ["Asian"], "subject.gender": ["man"],
               "treatment": ["atorvastatin with ciprofloxacin"], "treatment.drug": ["atorvastatin", "ciprofloxacin"],
               "treatment.combination": ["atorvastatin with ciprofloxacin"], "effect": ["Rhabdomyolysis"]})],
     [("ADE", {"subject": ["an Asian man"], "subject.race": ["Asian"], "treatment": ["atorvastatin"],
               "treatment.drug": ["atorvastatin"], "effect": ["Rhabdomyolysis"]})],
     [("ADE", {"subject": ["Asian man"], "subject.gender": ["man"], "treatment": ["atorvastatin with ciprofloxacin"],
               "treatment.drug": ["atorvastatin", "ciprofloxacin"], "effect": ["Rhabdomyolysis"]})]),
    ("Nivolumab induced hypothyroidism in a patient with metastatic melanoma.",
     [("ADE", {"subject": ["a patient with metastatic melanoma"], "subject.disorder": ["metastatic melanoma"],
               "treatment": ["Nivolumab"], "treatment.drug": ["Nivolumab"],
               "treatment.disorder": ["metastatic melanoma"], "effect": ["hypothyroidism"]})],
     [("ADE", {"subject": ["a patient with metastatic melanoma"], "treatment": ["Nivolumab"],
               "treatment.drug": ["Nivolumab"], "effect": ["hypothyroidism"]})],
     [("ADE", {"subject": ["patient"], "treatment": ["Nivolumab"], "treatment.drug": ["Nivolumab"],
               "effect": ["hypothyroidism"]})]),
]

DRUGINFO = [
    {"name": "acetaminophen", "formula": "C8H9NO2", "drug_class": "Analgesic; antipyretic",
     "indication": "Relief of mild to moderate pain and reduction of fever.", "half_life": "2 to 3 hours",
     "brands": ["Tylenol", "Panadol"], "status_tags": ["approved"]},
    {"name": "aspirin", "formula": "C9H8O4", "drug_class": "Nonsteroidal anti-inflammatory drug; antiplatelet agent",
     "indication": "Pain, fever, inflammation and secondary prevention of cardiovascular events.",
     "half_life": "15 to 20 minutes (salicylate 2 to 3 hours)", "brands": ["Bayer", "Ecotrin"],
     "status_tags": ["approved", "vet_approved"]},
    {"name": "ibuprofen", "formula": "C13H18O2", "drug_class": "Nonsteroidal anti-inflammatory drug",
     "indication": "Pain, fever and inflammatory conditions.", "half_life": "2 hours",
     "brands": ["Advil", "Motrin"], "status_tags": ["approved"]},
    {"name": "metformin", "formula": "C4H11N5", "drug_class": "Biguanide antihyperglycemic",
     "indication": "Type 2 diabetes mellitus.", "half_life": "6.2 hours",
     "brands": ["Glucophage"], "status_tags": ["approved"]},
    {"name": "warfarin", "formula": "C19H16O4", "drug_class": "Vitamin K antagonist anticoagulant",
     "indication": "Prophylaxis and treatment of venous thromboembolism.", "half_life": "20 to 60 hours",
     "brands": ["Coumadin", "Jantoven"], "status_tags": ["approved"]},
    {"name": "carbamazepine", "formula": "C15H12N2O", "drug_class": "Anticonvulsant",
     "indication": "Epilepsy and trigeminal neuralgia.", "half_life": "25 to 65 hours (initial)",
     "brands": ["Tegretol"], "status_tags": ["approved"]},
    {"name": "clozapine", "formula": "C18H19ClN4", "drug_class": "Atypical antipsychotic",
     "indication": "Treatment-resistant schizophrenia.", "half_life": "12 hours",
     "brands": ["Clozaril"], "status_tags": ["approved"]},
    {"name": "metamizole", "formula": "C13H17N3O4S", "drug_class": "Pyrazolone analgesic",
     "indication": "Severe pain and fever.", "half_life": "2.6 hours (active metabolite)",
     "brands": ["Novalgin"], "status_tags": ["withdrawn", "vet_approved"]},
]


def events(spec):
    return [{"event_type": t, "arguments": args} for t, args in spec]


def write_jsonl(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def main():
    write_jsonl(DATA / "corpus" / "case_reports_50.jsonl", corpus50())
    write_jsonl(DATA / "corpus" / "case_reports_small.jsonl", small5())
    write_jsonl(DATA / "ade_train.jsonl", training_set())
    lex = DATA / "lexicons"
    lex.mkdir(parents=True, exist_ok=True)
    (lex / "drugs.txt").write_text(
        "# drug names and synonyms, one lowercase term per line\n"
        + "\n".join(sorted(set(DRUGS) | set(DRUG_SYNONYMS) | {"colchicine", "metamizole"})) + "\n")
    (lex / "effects.txt").write_text(
        "# adverse effect terms, one lowercase term per line\n"
        + "\n".join(sorted(set(EFFECTS) | set(EFFECT_SYNONYMS) | {"fever", "kidney injury"})) + "\n")
    with (DATA / "synonyms.tsv").open("w") as f:
        f.write("# synonym<TAB>canonical\n")
        for k, v in sorted({**DRUG_SYNONYMS, **EFFECT_SYNONYMS}.items()):
            f.write(f"{k}\t{v}\n")
    rows = []
    for i, (sentence, gold, flan, uie) in enumerate(PHEE):
        rows.append({"id": i, "sentence": sentence, "gold": events(gold),
                     "predictions": {"flan-t5": events(flan), "uie": events(uie)}})
    write_jsonl(DATA / "phee_preloaded.jsonl", rows)
    write_jsonl(DATA / "eval" / "gold.jsonl", [r["gold"] for r in rows])
    write_jsonl(DATA / "eval" / "pred_flan_t5.jsonl", [r["predictions"]["flan-t5"] for r in rows])
    (DATA / "druginfo.json").write_text(json.dumps(DRUGINFO, indent=2) + "\n")

    remote = DATA / "remote"
    remote.mkdir(parents=True, exist_ok=True)
    body = json.dumps(events(PHEE[4][1]) + events(PHEE[0][1]))
    (remote / "sentence.txt").write_text(PHEE[4][0] + "\n")
    (remote / "response_full.json").write_text(body)
    # Truncated after the last complete event object.
    cut = body.rindex('"effect": ["rash"]}}') + len('"effect": ["rash"]}}')
    (remote / "response_truncated.txt").write_text(body[:cut] + ', {"event_type": "AD')


if __name__ == "__main__":
    main()
