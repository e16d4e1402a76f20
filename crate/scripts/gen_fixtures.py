#!/usr/bin/env python3
"""Regenerate the corpus fixtures under fixtures/.

Everything is driven by a fixed RNG seed so the committed files are
reproducible. The generator also prints the ground truth it encodes (term
distribution, expected top terms, drift ranks) so tests can be checked
against it.
"""
import json
import random
import re
from collections import Counter
from datetime import datetime, timedelta, timezone
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"
STOP = {l.strip() for l in open(ROOT / "crates/core/data/stopwords_en.txt") if l.strip() and not l.startswith("#")}
DICT = {l.strip() for l in open(ROOT / "crates/core/data/dictionary_en.txt") if l.strip() and not l.startswith("#")}

TABLE1 = ["pleasure", "sleep", "therapy", "activities", "treatment", "long", "abuse", "health",
          "identity", "life", "mood", "mental", "depression", "physical", "pressure", "childhood"]
SEEDS = ["depression", "depressed", "feelingdown"]
SLANG = ["whazzup", "smh", "lol", "omg", "tbh", "idk", "feelz", "ugh", "bae", "nvm"]

ESSAYS = {
    "major_depressive_disorder": [
        "Major depressive disorder is a mental health condition marked by a low mood that lasts a long time.",
        "A person with depression loses pleasure in activities that once brought pleasure and meaning to life.",
        "Sleep is often disturbed, and poor sleep makes the low mood and the physical fatigue worse.",
        "Treatment usually combines therapy with medication, and therapy helps patients rebuild daily activities.",
        "Mental health professionals ask about childhood, because childhood abuse raises the long term risk of depression.",
        "Physical health and mental health are linked, and chronic physical illness can deepen depression.",
        "Work pressure and social pressure can trigger an episode in a vulnerable person.",
        "Many patients describe a loss of identity, as if the illness had replaced their old life.",
        "Long bouts of insomnia are common, and some patients sleep far too much instead.",
        "Early treatment shortens the episode and protects physical health over a long life.",
        "Therapy teaches skills to notice mood changes and to plan pleasant activities each week.",
        "Substance abuse often hides depression and makes treatment harder.",
        "A stable identity and supportive relationships help patients recover a sense of pleasure in life.",
        "Doctors screen for mood symptoms, sleep problems and thoughts about death.",
    ],
    "depression": [
        "Depression affects mood, thinking, sleep and physical energy across the whole life span.",
        "Students under constant pressure at school or work report more depression and more poor sleep.",
        "The loss of pleasure, called anhedonia, means ordinary activities feel empty.",
        "Mental health services offer talking therapy, group therapy and medication as treatment.",
        "Childhood experiences shape identity, and childhood abuse or neglect leaves a long shadow.",
        "Regular physical activities such as walking improve mood and support mental health.",
        "Depression is not weakness, and asking for treatment is a sign of strength.",
        "Family pressure, money pressure and loneliness can all feed a low mood.",
        "Alcohol abuse and drug abuse frequently occur together with depression.",
        "Good sleep habits are part of treatment because sleep and mood move together.",
        "Over a long period, untreated depression can damage physical health and shorten life.",
        "Therapy helps survivors rebuild identity after illness, since illness can erode identity, and find pleasure in life again.",
        "Community health programs reduce stigma so that more people seek therapy.",
    ],
    "psychotic_depression": [
        "Psychotic depression is a severe form of depression in which a person also loses touch with reality.",
        "Patients may hear voices or hold false beliefs, and the mood is deeply low for a long time.",
        "Sleep is badly disrupted, and the loss of sleep feeds both the psychosis and the low mood.",
        "Treatment often needs a hospital stay, medication and careful therapy once the person is stable.",
        "A history of childhood abuse or childhood trauma is common in people with this form of depression.",
        "Physical health suffers because the person stops eating, stops activities and withdraws from life.",
        "Mental health teams watch for pressure from voices that urge self harm.",
        "Recovery includes rebuilding identity and slowly returning to activities that bring pleasure.",
        "Electroconvulsive therapy is a treatment option when medication does not work.",
        "Family therapy lowers pressure at home and supports long term mental health.",
        "Substance abuse must be treated at the same time as the mood disorder.",
        "With treatment, many people regain pleasure, sleep well and return to a full life.",
        "Physical exercise and regular sleep protect mental health after recovery.",
        "A secure identity and a sense of meaning help prevent relapse of depression.",
    ],
}

URL = re.compile(r"(?:[a-z][a-z0-9+.-]*://|www\.)\S*", re.I)


def tokens(text, keep_hashtags=True):
    text = URL.sub(" ", text)
    out = []
    for raw in text.split():
        if raw.startswith("@"):
            continue
        is_tag = raw.startswith("#")
        if is_tag:
            if not keep_hashtags:
                continue
            raw = raw[1:]
        raw = raw.replace("'", "").replace("’", "")
        for piece in re.split(r"[^0-9a-zA-Z]+", raw):
            p = piece.lower()
            if len(p) >= 2 and not p.isdigit():
                out.append(p)
    return out


def content(text):
    return [t for t in tokens(text) if t not in STOP]


def write_essays(rng):
    d = FIX / "essays"
    d.mkdir(parents=True, exist_ok=True)
    counts = Counter()
    for name, sents in ESSAYS.items():
        # three passes over the sentence pool in shuffled order
        paras = []
        for _ in range(3):
            s = sents[:]
            rng.shuffle(s)
            paras.append(" ".join(s))
        text = "\n\n".join(paras) + "\n"
        (d / f"{name}.txt").write_text(text, encoding="utf-8")
        counts.update(content(text))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    top16 = {t for t, _ in ranked[:16]}
    assert top16 == set(TABLE1), (sorted(top16 ^ set(TABLE1)), ranked[:22])
    print("essay top-20:", ranked[:20])
    return counts


def user_pool(rng, n):
    first = ["amber", "blake", "casey", "devon", "ellis", "frankie", "gray", "harper", "indy", "jules",
             "kai", "logan", "morgan", "noel", "oakley", "parker", "quinn", "reese", "sage", "tatum"]
    pool = set()
    while len(pool) < n:
        pool.add(f"{rng.choice(first)}_{rng.choice('qxzjv')}{rng.randrange(1000, 9999)}")
    return sorted(pool)


def ts(base, i):
    return (base + timedelta(minutes=7 * i)).strftime("%Y-%m-%dT%H:%M:%SZ")


BASE = datetime(2018, 3, 1, tzinfo=timezone.utc)


def decorate(rng, words, users, author):
    parts = words[:]
    if rng.random() < 0.25:
        parts.insert(rng.randrange(len(parts) + 1), rng.choice(["i", "the", "and", "my", "so", "just", "to", "for"]))
    if rng.random() < 0.2:
        parts.insert(rng.randrange(len(parts) + 1), rng.choice(SLANG))
    if rng.random() < 0.15:
        other = rng.choice([u for u in users if u != author])
        parts.insert(0, "@" + other)
    if rng.random() < 0.15:
        parts.append(f"https://t.co/{rng.randrange(16**6):06x}")
    if rng.random() < 0.1:
        parts.append("\U0001F614")
    return parts


def sample_words(rng, dist_terms, dist_weights, k):
    return rng.choices(dist_terms, weights=dist_weights, k=k)


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        for r in rows:
            if isinstance(r, str):
                fh.write(r + "\n")
            else:
                fh.write(json.dumps(r, ensure_ascii=False) + "\n")


def paired(rng, counts, n_match, n_other, n_users, name):
    users = user_pool(rng, n_users)
    terms = sorted(counts)
    weights = [counts[t] for t in terms]
    rows = []
    for i in range(n_match + n_other):
        author = users[i % n_users] if i < n_users else rng.choice(users)
        words = sample_words(rng, terms, weights, rng.randint(16, 24))
        parts = decorate(rng, words, users, author)
        if i < n_match:
            parts.append("#" + rng.choice(SEEDS))
        else:
            parts.append("#" + rng.choice(["mondaymotivation", "coffee", "weekend"]))
        rows.append({"id": f"{name}-{i:05d}", "user": author, "text": " ".join(parts), "created_at": ts(BASE, i)})
    rng.shuffle(rows)
    return users, rows


def drift(rng, counts):
    users = user_pool(rng, 40)
    base = {t: c for t, c in counts.items() if t not in ("sleep", "insomnia")}
    terms = sorted(base)
    weights = [base[t] for t in terms]
    # probability that a tweet talks about insomnia rather than sleep, by position
    def p_insomnia(i):
        if i < 100:
            return 0.03
        if i < 200:
            return 0.25
        if i < 500:
            return 0.5
        return 0.8
    rows = []
    for i in range(1000):
        author = rng.choice(users)
        words = sample_words(rng, terms, weights, rng.randint(6, 10))
        if rng.random() < p_insomnia(i):
            words.insert(rng.randrange(len(words) + 1), "insomnia")
        else:
            words[rng.randrange(len(words)):rng.randrange(len(words)) ] = ["having", "difficulty", "with", "sleep"]
        parts = decorate(rng, words, users, author) + ["#" + rng.choice(SEEDS)]
        rows.append({"id": f"drift-{i:05d}", "user": author, "text": " ".join(parts), "created_at": ts(BASE, i)})
    # report the cumulative ranks the fixture encodes
    for n in (100, 200, 500, 1000):
        c = Counter()
        for r in rows[:n]:
            c.update(t for t in content(r["text"]) if t not in SEEDS)
        ranked = [t for t, _ in sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))]
        total = sum(c.values())
        print(f"drift n={n}: insomnia rank {ranked.index('insomnia') + 1 if 'insomnia' in c else None}, "
              f"sleep relfreq {c['sleep'] / total:.4f}")
    rows_shuffled = rows[:]
    rng.shuffle(rows_shuffled)
    return rows_shuffled


def uniform_random(rng):
    users = user_pool(rng, 30)
    vocab = sorted(w for w in DICT if len(w) > 3 and w not in STOP)
    rows = []
    for i in range(1000):
        author = rng.choice(users)
        words = rng.sample(vocab, rng.randint(8, 12))
        rows.append({"id": f"rand-{i:05d}", "user": author,
                     "text": " ".join(words + ["#" + rng.choice(SEEDS)]), "created_at": ts(BASE, i)})
    return rows


def main():
    rng = random.Random(20180301)
    counts = write_essays(rng)
    tw = FIX / "tweets"
    tw.mkdir(parents=True, exist_ok=True)

    users, rows = paired(rng, counts, 1200, 100, 50, "pair")
    rows.insert(17, '{"id": "bad-1", "user": "nobody_text"}')
    rows.insert(400, "{not json at all")
    rows.insert(901, '{"id": "bad-3", "text": "missing user field #depression"}')
    write_jsonl(tw / "paired.jsonl", rows)
    (tw / "paired_handles.txt").write_text("\n".join(users) + "\n", encoding="utf-8")
    print("paired: 1200 matching, 100 other, 3 malformed, 50 users")

    ten_users, ten_rows = paired(rng, counts, 60, 0, 10, "ten")
    write_jsonl(tw / "ten_users.jsonl", ten_rows)
    (tw / "ten_users_handles.txt").write_text("\n".join(ten_users) + "\n", encoding="utf-8")

    write_jsonl(tw / "drift.jsonl", drift(rng, counts))
    write_jsonl(tw / "uniform_random.jsonl", uniform_random(rng))


if __name__ == "__main__":
    main()
