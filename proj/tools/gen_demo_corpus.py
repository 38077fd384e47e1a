#!/usr/bin/env python3
"""Generate the bundled German-English demo corpus with CoNLL-U parses.

Sentences come from a small set of hand-parsed clause templates filled from
agreement-aware word lists, so every tree is a correct UD-style analysis.
Output is deterministic for a given --seed.

    python3 tools/gen_demo_corpus.py --out data/demo
"""

import argparse
import random
from pathlib import Path

# (noun, gender, english)
SUBJECTS = [
    ("Hund", "m", "dog"), ("Mann", "m", "man"), ("Junge", "m", "boy"),
    ("Arzt", "m", "doctor"), ("Lehrer", "m", "teacher"), ("Nachbar", "m", "neighbour"),
    ("Koch", "m", "cook"), ("Frau", "f", "woman"), ("Katze", "f", "cat"),
    ("Lehrerin", "f", "teacher"), ("Mutter", "f", "mother"), ("Studentin", "f", "student"),
    ("Kind", "n", "child"), ("Mädchen", "n", "girl"), ("Pferd", "n", "horse"),
]
OBJECTS = [
    ("Apfel", "m", "apple"), ("Brief", "m", "letter"), ("Wagen", "m", "car"),
    ("Kuchen", "m", "cake"), ("Zeitung", "f", "newspaper"), ("Suppe", "f", "soup"),
    ("Tasche", "f", "bag"), ("Buch", "n", "book"), ("Brot", "n", "bread"),
    ("Bild", "n", "picture"), ("Geschenk", "n", "present"),
]
ADJECTIVES = [("alt", "old"), ("neu", "new"), ("groß", "big"), ("klein", "small"), ("rot", "red")]
INTRANSITIVE = [("schläft", "sleeps"), ("lacht", "laughs"), ("arbeitet", "works"),
                ("wartet", "waits"), ("singt", "sings")]
TRANSITIVE = [("liest", "reads"), ("kauft", "buys"), ("sieht", "sees"),
              ("sucht", "is looking for"), ("malt", "paints"), ("bringt", "brings")]
DITRANSITIVE = [("gibt", "gives"), ("zeigt", "shows"), ("schenkt", "gives")]
MOTION = [("fährt", "goes", "fahren", "go"), ("fliegt", "flies", "fliegen", "fly"),
          ("läuft", "runs", "laufen", "run")]
CITIES = ["Berlin", "Hamburg", "Wien", "Zürich", "München"]
ADVERBS = [("heute", "today"), ("oft", "often"), ("jetzt", "now"), ("wieder", "again")]
PERFECT = [("gesehen", "seen"), ("gekauft", "bought"), ("gelesen", "read"), ("gesucht", "looked for")]
PRONOUNS = [("Ich", "habe", "I have"), ("Wir", "haben", "We have"), ("Sie", "haben", "They have")]
QWORDS = [("Wo", "Where does"), ("Wann", "When does"), ("Warum", "Why does")]
QVERBS = [("wohnt", "live"), ("arbeitet", "work"), ("schläft", "sleep"), ("wartet", "wait")]

DEF = {"nom": {"m": "der", "f": "die", "n": "das"},
       "acc": {"m": "den", "f": "die", "n": "das"},
       "dat": {"m": "dem", "f": "der", "n": "dem"}}
INDEF = {"nom": {"m": "ein", "f": "eine", "n": "ein"},
         "acc": {"m": "einen", "f": "eine", "n": "ein"},
         "dat": {"m": "einem", "f": "einer", "n": "einem"}}


def adj_ending(article, case, gender):
    if article == "def":
        return "en" if case == "dat" or (case == "acc" and gender == "m") else "e"
    if case == "dat":
        return "en"
    if gender == "m":
        return "er" if case == "nom" else "en"
    return "e" if gender == "f" else "es"


class Sentence:
    """Tokens with 1-based heads; head 0 marks the root."""

    def __init__(self):
        self.rows = []  # [form, upos, head, deprel]

    def add(self, form, upos, head, deprel):
        self.rows.append([form, upos, head, deprel])
        return len(self.rows)

    def text(self):
        out = ""
        for i, (form, upos, _, _) in enumerate(self.rows):
            if i > 0 and upos != "PUNCT":
                out += " "
            elif i > 0 and form not in ",.?!":
                out += " "
            out += form
        return out


class Gen:
    def __init__(self, rng):
        self.rng = rng

    def pick(self, xs):
        return self.rng.choice(xs)

    def noun_phrase(self, s, head, deprel, case, pool, cap=False, allow_adj=True):
        """Adds [det] [amod] noun attached to `head`; returns (noun index, english)."""
        noun, gender, en = self.pick(pool)
        definite = self.rng.random() < 0.6
        det = (DEF if definite else INDEF)[case][gender]
        adj = self.pick(ADJECTIVES) if allow_adj and self.rng.random() < 0.35 else None
        if cap:
            det = det.capitalize()
        # Attach det/amod after the noun index is known: reserve positions.
        d = s.add(det, "DET", None, "det")
        a = None
        if adj:
            a = s.add(adj[0] + adj_ending("def" if definite else "indef", case, gender), "ADJ",
                      None, "amod")
        n = s.add(noun, "NOUN", head, deprel)
        s.rows[d - 1][2] = n
        if a:
            s.rows[a - 1][2] = n
        en_det = "the" if definite else ("an" if (adj[1] if adj else en)[0] in "aeiou" else "a")
        en_np = f"{en_det} {adj[1] + ' ' if adj else ''}{en}"
        return n, (en_np[0].upper() + en_np[1:]) if cap else en_np

    # Each template returns (Sentence, english).

    def intransitive(self):
        s = Sentence()
        verb, en_v = self.pick(INTRANSITIVE)
        n, subj = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS, cap=True)
        v = s.add(verb, "VERB", 0, "root")
        s.rows[n - 1][2] = v
        en = f"{subj} {en_v}"
        if self.rng.random() < 0.4:
            adv, en_adv = self.pick(ADVERBS)
            s.add(adv, "ADV", v, "advmod")
            en += f" {en_adv}"
        s.add(".", "PUNCT", v, "punct")
        return s, en + "."

    def transitive(self):
        s = Sentence()
        verb, en_v = self.pick(TRANSITIVE)
        n, subj = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS, cap=True)
        v = s.add(verb, "VERB", 0, "root")
        s.rows[n - 1][2] = v
        _, obj = self.noun_phrase(s, v, "obj", "acc", OBJECTS)
        s.add(".", "PUNCT", v, "punct")
        return s, f"{subj} {en_v} {obj}."

    def adverb_first(self):
        s = Sentence()
        adv, en_adv = self.pick(ADVERBS[:1] + ADVERBS[2:])
        verb, en_v = self.pick(TRANSITIVE)
        a = s.add(adv.capitalize(), "ADV", None, "advmod")
        v = s.add(verb, "VERB", 0, "root")
        s.rows[a - 1][2] = v
        _, subj = self.noun_phrase(s, v, "nsubj", "nom", SUBJECTS)
        _, obj = self.noun_phrase(s, v, "obj", "acc", OBJECTS)
        s.add(".", "PUNCT", v, "punct")
        en = f"{subj[0].upper() + subj[1:]} {en_v} {obj} {en_adv}."
        return s, en

    def ditransitive(self):
        s = Sentence()
        verb, en_v = self.pick(DITRANSITIVE)
        n, subj = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS, cap=True)
        v = s.add(verb, "VERB", 0, "root")
        s.rows[n - 1][2] = v
        _, iobj = self.noun_phrase(s, v, "iobj", "dat", SUBJECTS, allow_adj=False)
        _, obj = self.noun_phrase(s, v, "obj", "acc", OBJECTS)
        s.add(".", "PUNCT", v, "punct")
        return s, f"{subj} {en_v} {iobj} {obj}."

    def motion(self):
        s = Sentence()
        verb, en_v, _, _ = self.pick(MOTION)
        city = self.pick(CITIES)
        n, subj = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS, cap=True)
        v = s.add(verb, "VERB", 0, "root")
        s.rows[n - 1][2] = v
        c = s.add("nach", "ADP", None, "case")
        o = s.add(city, "PROPN", v, "obl")
        s.rows[c - 1][2] = o
        s.add(".", "PUNCT", v, "punct")
        return s, f"{subj} {en_v} to {city}."

    def modal(self):
        s = Sentence()
        _, _, inf, en_inf = self.pick(MOTION)
        city = self.pick(CITIES)
        adv, en_adv = self.pick(ADVERBS)
        n, subj = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS, cap=True)
        aux = s.add("will", "AUX", None, "aux")
        a = s.add(adv, "ADV", None, "advmod")
        c = s.add("nach", "ADP", None, "case")
        o = s.add(city, "PROPN", None, "obl")
        v = s.add(inf, "VERB", 0, "root")
        for i in (n, aux, a, o):
            s.rows[i - 1][2] = v
        s.rows[c - 1][2] = o
        s.add(".", "PUNCT", v, "punct")
        return s, f"{subj} wants to {en_inf} to {city} {en_adv}."

    def perfect(self):
        s = Sentence()
        pron, aux_form, en_subj = self.pick(PRONOUNS)
        part, en_part = self.pick(PERFECT)
        p = s.add(pron, "PRON", None, "nsubj")
        aux = s.add(aux_form, "AUX", None, "aux")
        _, obj = self.noun_phrase(s, None, "obj", "acc", OBJECTS)
        o = len(s.rows)
        v = s.add(part, "VERB", 0, "root")
        for i in (p, aux, o):
            s.rows[i - 1][2] = v
        s.add(".", "PUNCT", v, "punct")
        return s, f"{en_subj} {en_part} {obj}."

    def complement(self):
        s = Sentence()
        verb, en_v = self.pick(INTRANSITIVE)
        i = s.add("Ich", "PRON", None, "nsubj")
        g = s.add("glaube", "VERB", 0, "root")
        s.rows[i - 1][2] = g
        s.add(",", "PUNCT", None, "punct")
        m = s.add("dass", "SCONJ", None, "mark")
        n, subj = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS)
        v = s.add(verb, "VERB", g, "ccomp")
        s.rows[2][2] = v
        s.rows[m - 1][2] = v
        s.rows[n - 1][2] = v
        s.add(".", "PUNCT", g, "punct")
        return s, f"I think that {subj} {en_v}."

    def coordination(self):
        s = Sentence()
        v1, en1 = self.pick(INTRANSITIVE)
        v2, en2 = self.pick(INTRANSITIVE)
        n1, subj1 = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS, cap=True, allow_adj=False)
        a = s.add(v1, "VERB", 0, "root")
        s.rows[n1 - 1][2] = a
        c = s.add("und", "CCONJ", None, "cc")
        n2, subj2 = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS, allow_adj=False)
        b = s.add(v2, "VERB", a, "conj")
        s.rows[c - 1][2] = b
        s.rows[n2 - 1][2] = b
        s.add(".", "PUNCT", a, "punct")
        return s, f"{subj1} {en1} and {subj2} {en2}."

    def relative(self):
        s = Sentence()
        verb, en_v = self.pick(INTRANSITIVE)
        rel, en_rel = self.pick(INTRANSITIVE)
        noun, gender, en = self.pick(SUBJECTS)
        d = s.add(DEF["nom"][gender].capitalize(), "DET", None, "det")
        n = s.add(noun, "NOUN", None, "nsubj")
        s.rows[d - 1][2] = n
        p1 = s.add(",", "PUNCT", None, "punct")
        r = s.add(DEF["nom"][gender], "PRON", None, "nsubj")
        adv = s.add("dort", "ADV", None, "advmod")
        rv = s.add(rel, "VERB", n, "acl:relcl")
        for i in (p1, r, adv):
            s.rows[i - 1][2] = rv
        s.add(",", "PUNCT", rv, "punct")
        v = s.add(verb, "VERB", 0, "root")
        s.rows[n - 1][2] = v
        s.add(".", "PUNCT", v, "punct")
        who = "who" if gender != "n" or noun in ("Kind", "Mädchen") else "that"
        return s, f"The {en} {who} {en_rel} there {en_v}."

    def question(self):
        s = Sentence()
        q, en_q = self.pick(QWORDS)
        verb, en_v = self.pick(QVERBS)
        w = s.add(q, "ADV", None, "advmod")
        v = s.add(verb, "VERB", 0, "root")
        s.rows[w - 1][2] = v
        _, subj = self.noun_phrase(s, v, "nsubj", "nom", SUBJECTS, allow_adj=False)
        s.add("?", "PUNCT", v, "punct")
        return s, f"{en_q} {subj} {en_v}?"

    def negation(self):
        s = Sentence()
        verb, en_v = self.pick(TRANSITIVE[:3])
        n, subj = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS, cap=True, allow_adj=False)
        v = s.add(verb, "VERB", 0, "root")
        s.rows[n - 1][2] = v
        _, obj = self.noun_phrase(s, v, "obj", "acc", OBJECTS)
        s.add("nicht", "PART", v, "advmod")
        s.add(".", "PUNCT", v, "punct")
        base = en_v[:-1] if en_v.endswith("s") else en_v
        return s, f"{subj} does not {base} {obj}."

    def long_list(self, clauses):
        """A very long coordination, used to exercise the length filter."""
        s = Sentence()
        first = None
        parts = []
        for k in range(clauses):
            verb, en_v = self.pick(INTRANSITIVE)
            if k > 0:
                c = s.add("und", "CCONJ", None, "cc")
            n, subj = self.noun_phrase(s, None, "nsubj", "nom", SUBJECTS, cap=(k == 0),
                                       allow_adj=False)
            v = s.add(verb, "VERB", 0 if k == 0 else first, "root" if k == 0 else "conj")
            s.rows[n - 1][2] = v
            if k > 0:
                s.rows[c - 1][2] = v
            else:
                first = v
            parts.append(f"{subj} {en_v}")
        s.add(".", "PUNCT", first, "punct")
        return s, " and ".join(parts) + "."

    TEMPLATES = ["intransitive", "transitive", "adverb_first", "ditransitive", "motion", "modal",
                 "perfect", "complement", "coordination", "relative", "question", "negation"]

    def sentence(self):
        return getattr(self, self.pick(self.TEMPLATES))()


def conllu_block(sent_id, s):
    lines = [f"# sent_id = {sent_id}", f"# text = {s.text()}"]
    for i, (form, upos, head, deprel) in enumerate(s.rows, start=1):
        lemma = form.lower() if upos not in ("PROPN", "NOUN") else form
        lines.append(f"{i}\t{form}\t{lemma}\t{upos}\t_\t_\t{head}\t{deprel}\t_\t_")
    return "\n".join(lines) + "\n\n"


def generate(rng, count, prefix, seen, long_at=None):
    gen = Gen(rng)
    out = []
    while len(out) < count:
        if long_at is not None and len(out) == long_at:
            s, en = gen.long_list(32)
        else:
            s, en = gen.sentence()
        key = s.text()
        if key in seen:
            continue
        seen.add(key)
        out.append((f"{prefix}-{len(out) + 1:03d}", s, en))
    return out


def write(out_dir, name, items):
    with open(out_dir / f"{name}.de", "w", encoding="utf-8") as de, \
         open(out_dir / f"{name}.en", "w", encoding="utf-8") as en, \
         open(out_dir / f"{name}.conllu", "w", encoding="utf-8") as cu:
        for sent_id, s, english in items:
            de.write(s.text() + "\n")
            en.write(english + "\n")
            cu.write(conllu_block(sent_id, s))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("data/demo"))
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("--corpus", type=int, default=200)
    ap.add_argument("--tests", type=int, default=20)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    seen = set()
    args.out.mkdir(parents=True, exist_ok=True)
    write(args.out, "corpus", generate(rng, args.corpus, "corpus", seen, long_at=137))
    write(args.out, "test", generate(rng, args.tests, "test", seen))


if __name__ == "__main__":
    main()
