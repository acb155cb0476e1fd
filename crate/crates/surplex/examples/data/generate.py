#!/usr/bin/env python3
"""Regenerate the demo corpus in this directory.

Everything here is synthetic. Pronunciations are approximate, the
frequency counts are Zipf-shaped, and every rating column is drawn from
a planted linear model over the word's (token-weighted) bigram
surprisal, an independent iconicity score, and an independent
"pleasantness" latent that ties the valence measures to humor. The
point of the corpus is to exercise every input format and give the
model suites real effects to find, not to say anything about English.

Running it rewrites dictionary.dict, frequency.tsv, and norms/*; the
output is deterministic for a fixed seed.
"""

import math
import os
import random
from collections import defaultdict

HERE = os.path.dirname(os.path.abspath(__file__))
SEED = 20260819

INVENTORY = set(
    "AA AE AH AO AW AY B CH D DH EH ER EY F G HH IH IY JH K L M N NG "
    "OW OY P R S SH T TH UH UW V W Y Z ZH".split()
)

# word|pronunciation|pos|morphemes; pos "-" means no part-of-speech row.
WORDS = """\
a|AH0|-|1
the|DH AH0|-|1
and|AE1 N D|-|1
of|AH1 V|-|1
to|T UW1|-|1
apple|AE1 P AH0 L|Noun|1
attic|AE1 T IH0 K|Noun|1
banana|B AH0 N AE1 N AH0|Noun|1
basket|B AE1 S K AH0 T|Noun|1
bird|B ER1 D|Noun|1
blanket|B L AE1 NG K AH0 T|Noun|1
blob|B L AA1 B|Noun|1
boot|B UW1 T|Noun|1
bottle|B AA1 T AH0 L|Noun|1
bread|B R EH1 D|Noun|1
bridge|B R IH1 JH|Noun|1
bubble|B AH1 B AH0 L|Noun|1
butterfly|B AH1 T ER0 F L AY2|Noun|2
button|B AH1 T AH0 N|Noun|1
candle|K AE1 N D AH0 L|Noun|1
cat|K AE1 T|Noun|1
cellar|S EH1 L ER0|Noun|1
chair|CH EH1 R|Noun|1
cherry|CH EH1 R IY0|Noun|1
chicken|CH IH1 K AH0 N|Noun|1
child|CH AY1 L D|Noun|1
city|S IH1 T IY0|Noun|1
cloud|K L AW1 D|Noun|1
coffee|K AO1 F IY0|Noun|1
copper|K AA1 P ER0|Noun|1
daydream|D EY1 D R IY2 M|Noun|2
dog|D AO1 G|Noun|1
dolphin|D AA1 L F AH0 N|Noun|1
door|D AO1 R|Noun|1
elephant|EH1 L AH0 F AH0 N T|Noun|1
father|F AA1 DH ER0|Noun|1
fire|F AY1 ER0|Noun|1
firefly|F AY1 ER0 F L AY2|Noun|2
fish|F IH1 SH|Noun|1
flower|F L AW1 ER0|Noun|1
forest|F AO1 R AH0 S T|Noun|1
friend|F R EH1 N D|Noun|1
garden|G AA1 R D AH0 N|Noun|1
garlic|G AA1 R L IH0 K|Noun|1
gold|G OW1 L D|Noun|1
hammer|HH AE1 M ER0|Noun|1
hiccup|HH IH1 K AH0 P|Noun|1
horse|HH AO1 R S|Noun|1
house|HH AW1 S|Noun|1
island|AY1 L AH0 N D|Noun|1
jacket|JH AE1 K AH0 T|Noun|1
jelly|JH EH1 L IY0|Noun|1
kitchen|K IH1 CH AH0 N|Noun|1
lemon|L EH1 M AH0 N|Noun|1
letter|L EH1 T ER0|Noun|1
lightning|L AY1 T N IH0 NG|Noun|1
market|M AA1 R K AH0 T|Noun|1
meadow|M EH1 D OW0|Noun|1
milk|M IH1 L K|Noun|1
mirror|M IH1 R ER0|Noun|1
mitten|M IH1 T AH0 N|Noun|1
monkey|M AH1 NG K IY0|Noun|1
moon|M UW1 N|Noun|1
moonlight|M UW1 N L AY2 T|Noun|2
morning|M AO1 R N IH0 NG|Noun|1
mother|M AH1 DH ER0|Noun|1
mountain|M AW1 N T AH0 N|Noun|1
music|M Y UW1 Z IH0 K|Noun|1
needle|N IY1 D AH0 L|Noun|1
night|N AY1 T|Noun|1
nightmare|N AY1 T M EH2 R|Noun|2
noodle|N UW1 D AH0 L|Noun|1
ocean|OW1 SH AH0 N|Noun|1
onion|AH1 N Y AH0 N|Noun|1
oomph|UH1 M F|Noun|1
oyster|OY1 S T ER0|Noun|1
paper|P EY1 P ER0|Noun|1
penguin|P EH1 NG G W AH0 N|Noun|1
pepper|P EH1 P ER0|Noun|1
pickle|P IH1 K AH0 L|Noun|1
picture|P IH1 K CH ER0|Noun|1
pillow|P IH1 L OW0|Noun|1
platypus|P L AE1 T AH0 P AH0 S|Noun|1
pocket|P AA1 K AH0 T|Noun|1
potato|P AH0 T EY1 T OW0|Noun|1
rabbit|R AE1 B AH0 T|Noun|1
rain|R EY1 N|Noun|1
rainbow|R EY1 N B OW2|Noun|2
river|R IH1 V ER0|Noun|1
sandal|S AE1 N D AH0 L|Noun|1
shadow|SH AE1 D OW0|Noun|1
silver|S IH1 L V ER0|Noun|1
snow|S N OW1|Noun|1
snowflake|S N OW1 F L EY2 K|Noun|2
spider|S P AY1 D ER0|Noun|1
star|S T AA1 R|Noun|1
stone|S T OW1 N|Noun|1
story|S T AO1 R IY0|Noun|1
street|S T R IY1 T|Noun|1
sugar|SH UH1 G ER0|Noun|1
summer|S AH1 M ER0|Noun|1
sun|S AH1 N|Noun|1
sunshine|S AH1 N SH AY2 N|Noun|2
sweater|S W EH1 T ER0|Noun|1
table|T EY1 B AH0 L|Noun|1
thread|TH R EH1 D|Noun|1
thunder|TH AH1 N D ER0|Noun|1
thunderstorm|TH AH1 N D ER0 S T AO2 R M|Noun|2
tiger|T AY1 G ER0|Noun|1
tomato|T AH0 M EY1 T OW0|Noun|1
tree|T R IY1|Noun|1
turtle|T ER1 T AH0 L|Noun|1
umbrella|AH0 M B R EH1 L AH0|Noun|1
village|V IH1 L AH0 JH|Noun|1
waffle|W AA1 F AH0 L|Noun|1
water|W AO1 T ER0|Noun|1
waterfall|W AO1 T ER0 F AO2 L|Noun|2
whale|W EY1 L|Noun|1
window|W IH1 N D OW0|Noun|1
winter|W IH1 N T ER0|Noun|1
wombat|W AA1 M B AE0 T|Noun|1
zigzag|Z IH1 G Z AE2 G|Noun|2
borrow|B AA1 R OW0|Verb|1
bounce|B AW1 N S|Verb|1
buzz|B AH1 Z|Verb|1
crash|K R AE1 SH|Verb|1
dance|D AE1 N S|Verb|1
drift|D R IH1 F T|Verb|1
float|F L OW1 T|Verb|1
forget|F ER0 G EH1 T|Verb|1
gallop|G AE1 L AH0 P|Verb|1
gather|G AE1 DH ER0|Verb|1
giggle|G IH1 G AH0 L|Verb|1
grumble|G R AH1 M B AH0 L|Verb|1
howl|HH AW1 L|Verb|1
jump|JH AH1 M P|Verb|1
laugh|L AE1 F|Verb|1
mumble|M AH1 M B AH0 L|Verb|1
ponder|P AA1 N D ER0|Verb|1
promise|P R AA1 M AH0 S|Verb|1
remember|R IH0 M EH1 M B ER0|Verb|1
run|R AH1 N|Verb|1
scatter|S K AE1 T ER0|Verb|1
shout|SH AW1 T|Verb|1
sing|S IH1 NG|Verb|1
slide|S L AY1 D|Verb|1
sparkle|S P AA1 R K AH0 L|Verb|1
squeak|S K W IY1 K|Verb|1
squirt|S K W ER1 T|Verb|1
swim|S W IH1 M|Verb|1
tumble|T AH1 M B AH0 L|Verb|1
wander|W AA1 N D ER0|Verb|1
whisper|W IH1 S P ER0|Verb|1
wiggle|W IH1 G AH0 L|Verb|1
ancient|EY1 N CH AH0 N T|Adjective|1
bright|B R AY1 T|Adjective|1
cheerful|CH IH1 R F AH0 L|Adjective|2
clumsy|K L AH1 M Z IY0|Adjective|1
crooked|K R UH1 K AH0 D|Adjective|1
dark|D AA1 R K|Adjective|1
dreadful|D R EH1 D F AH0 L|Adjective|2
fearless|F IH1 R L AH0 S|Adjective|2
fuzzy|F AH1 Z IY0|Adjective|1
gloomy|G L UW1 M IY0|Adjective|1
grumpy|G R AH1 M P IY0|Adjective|1
happy|HH AE1 P IY0|Adjective|1
huge|HH Y UW1 JH|Adjective|1
peaceful|P IY1 S F AH0 L|Adjective|2
purple|P ER1 P AH0 L|Adjective|1
rough|R AH1 F|Adjective|1
silly|S IH1 L IY0|Adjective|1
slimy|S L AY1 M IY0|Adjective|1
smooth|S M UW1 DH|Adjective|1
soft|S AO1 F T|Adjective|1
squishy|S K W IH1 SH IY0|Adjective|1
tiny|T AY1 N IY0|Adjective|1
unhappy|AH0 N HH AE1 P IY0|Adjective|2
wobbly|W AA1 B L IY0|Adjective|1
yellow|Y EH1 L OW0|Adjective|1
almost|AO1 L M OW0 S T|Adverb|1
always|AO1 L W EY0 Z|Adverb|1
barely|B EH1 R L IY0|Adverb|2
gently|JH EH1 N T L IY0|Adverb|2
loudly|L AW1 D L IY0|Adverb|2
never|N EH1 V ER0|Adverb|1
often|AO1 F AH0 N|Adverb|1
quickly|K W IH1 K L IY0|Adverb|2
slowly|S L OW1 L IY0|Adverb|2
softly|S AO1 F T L IY0|Adverb|2
"""

# Extra pronunciation variants; parenthesized entries fold into the
# base word, and "caramel" has no base line at all on purpose (the
# parser promotes such orphan variants with a warning).
VARIANTS = [
    ("THE(1)", "DH IY0"),
    ("A(1)", "EY1"),
    ("TOMATO(1)", "T AH0 M AA1 T OW0"),
    ("CARAMEL(1)", "K EH1 R AH0 M AH0 L"),
]

# In the dictionary but absent from the frequency table: dropped by the
# inner join.
NO_FREQUENCY = {"copper", "sandal"}
# In the frequency table but absent from the dictionary: also dropped.
FREQUENCY_ONLY = [("zebra", 210), ("quartz", 64), ("walrus", 88)]
# Norm rows for words outside the lexicon, counted as unmatched.
UNMATCHED_NORMS = ["zebra", "walrus"]
# Function words carry no rating norms at all.
NO_NORMS = {"a", "the", "and", "of", "to"}

EMOTIONS = [
    "anger", "anticipation", "disgust", "fear", "joy",
    "negative", "positive", "sadness", "surprise", "trust",
]


def parse_words():
    entries = []
    seen = set()
    for line in WORDS.strip().splitlines():
        word, pron, pos, morph = line.split("|")
        assert word not in seen, f"duplicate word {word}"
        seen.add(word)
        for token in pron.split():
            assert token.rstrip("012") in INVENTORY, f"{word}: bad phoneme {token}"
        entries.append((word, pron, None if pos == "-" else pos, int(morph)))
    return entries


def zipf_counts(rng, entries):
    """Function words get the top counts; the rest fall off by rank."""
    top = {"the": 22031, "a": 12841, "and": 10519, "of": 9812, "to": 9145}
    content = [w for w, _, _, _ in entries if w not in top]
    rng.shuffle(content)
    counts = dict(top)
    for rank, word in enumerate(content, start=1):
        counts[word] = max(2, int(3000 / rank**0.85) + rng.randrange(0, 20))
    return counts


def bigram_surprisal(lexicon):
    """Token-weighted bigram surprisal, matching the tool's default
    options: no boundaries, no smoothing, no leave-one-out."""
    pair = defaultdict(int)
    context = defaultdict(int)
    for phones, count in lexicon.values():
        for prev, nxt in zip(phones, phones[1:]):
            pair[(prev, nxt)] += count
            context[prev] += count
    out = {}
    for word, (phones, _) in lexicon.items():
        if len(phones) < 2:
            out[word] = None
            continue
        bits = [
            -math.log2(pair[(p, n)] / context[p]) for p, n in zip(phones, phones[1:])
        ]
        out[word] = sum(bits) / len(bits)
    return out


def standardize(values):
    mean = sum(values) / len(values)
    var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
    sd = math.sqrt(var)
    return [(v - mean) / sd for v in values]


def clip(x, lo, hi):
    return max(lo, min(hi, x))


def main():
    rng = random.Random(SEED)
    entries = parse_words()
    counts = zipf_counts(rng, entries)

    by_word = {w: (pron, pos, morph) for w, pron, pos, morph in entries}
    by_word["caramel"] = ("K EH1 R AH0 M AH0 L", "Noun", 1)
    counts["caramel"] = 2 + rng.randrange(0, 40)

    joined = sorted(w for w in by_word if w not in NO_FREQUENCY)

    lexicon = {
        w: ([t.rstrip("012") for t in by_word[w][0].split()], counts[w]) for w in joined
    }
    surprisal = bigram_surprisal(lexicon)

    rated = [w for w in joined if w not in NO_NORMS and surprisal[w] is not None]
    surp_z = dict(zip(rated, standardize([surprisal[w] for w in rated])))
    icon_z = dict(zip(rated, standardize([rng.gauss(0, 1) for _ in rated])))
    pleasant = {w: rng.gauss(0, 1) for w in rated}

    # Planted effects. Humor and both valence measures respond to
    # surprisal and iconicity with opposite signs; the shared
    # pleasantness latent keeps humor positively related to valence in
    # the simple regressions. Recall responds to surprisal directly, to
    # valence negatively, and to humor through its idiosyncratic part
    # (the humor noise), which keeps the humor and valence memory
    # effects from cancelling each other in the fitted models.
    iconicity = {w: clip(3.2 + 1.1 * icon_z[w], 1.0, 7.0) for w in rated}
    humor_noise = {w: rng.gauss(0, 0.42) for w in rated}
    humor = {
        w: clip(
            2.8
            + 0.35 * surp_z[w]
            + 0.30 * icon_z[w]
            + 0.42 * pleasant[w]
            + humor_noise[w],
            1.0,
            5.0,
        )
        for w in rated
    }
    g_val = {
        w: clip(
            5.0
            - 0.65 * surp_z[w]
            - 0.60 * icon_z[w]
            + 1.8 * pleasant[w]
            + rng.gauss(0, 0.55),
            1.0,
            9.0,
        )
        for w in rated
    }
    nrc_val = {
        w: clip(
            0.5
            - 0.08 * surp_z[w]
            - 0.07 * icon_z[w]
            + 0.19 * pleasant[w]
            + rng.gauss(0, 0.07),
            0.02,
            0.98,
        )
        for w in rated
    }

    noise_z = dict(zip(rated, standardize([humor_noise[w] for w in rated])))
    nrc_z = dict(zip(rated, standardize([nrc_val[w] for w in rated])))
    recall = {
        w: clip(
            0.55
            + 0.07 * surp_z[w]
            + 0.08 * noise_z[w]
            - 0.035 * nrc_z[w]
            + rng.gauss(0, 0.03),
            0.05,
            0.98,
        )
        for w in rated
    }

    def sigmoid(x):
        return 1.0 / (1.0 + math.exp(-x))

    flags = {}
    for w in rated:
        z = nrc_z[w]
        flags[w] = {
            "negative": int(rng.random() < sigmoid(-2.2 * z)),
            "positive": int(rng.random() < sigmoid(2.2 * z)),
            "anger": int(rng.random() < sigmoid(-1.8 * z - 0.7)),
            "disgust": int(rng.random() < sigmoid(-1.8 * z - 0.7)),
            "fear": int(rng.random() < sigmoid(-1.8 * z - 0.7)),
            "sadness": int(rng.random() < sigmoid(-1.8 * z - 0.7)),
            "anticipation": int(rng.random() < sigmoid(1.8 * z - 0.7)),
            "joy": int(rng.random() < sigmoid(1.8 * z - 0.7)),
            "surprise": int(rng.random() < sigmoid(1.8 * z - 0.7)),
            "trust": int(rng.random() < sigmoid(1.8 * z - 0.7)),
        }
    for emotion in EMOTIONS:
        ones = sum(flags[w][emotion] for w in rated)
        assert 12 <= ones <= len(rated) - 12, f"{emotion} lacks variance: {ones}"

    # Per-table coverage punches, partially overlapping so that most
    # rows stay complete.
    punches = {
        "humor": set(rng.sample(rated, 4)),
        "iconicity": set(rng.sample(rated, 6)),
        "glasgow": set(rng.sample(rated, 8)),
        "recall": set(rng.sample(rated, 10)),
        "nrc": set(rng.sample(rated, 6)),
        "morpholex": set(rng.sample(rated, 5)),
        "pos": set(rng.sample(rated, 2)),
    }

    write_dictionary(entries)
    write_frequency(counts, joined)
    write_norms(rated, punches, humor, iconicity, g_val, nrc_val, recall, flags, by_word, rng)
    print(f"{len(joined)} lexicon words, {len(rated)} rated")


def write_dictionary(entries):
    lines = [
        ";;; Demo pronouncing dictionary (synthetic; approximate pronunciations).",
        ";;; Format: WORD  PHONEMES..., with (1) suffixes marking variants.",
    ]
    body = {}
    for word, pron, _, _ in entries:
        body[word.upper()] = pron
    for variant, pron in VARIANTS:
        body[variant] = pron
    for key in sorted(body):
        lines.append(f"{key}  {body[key]}")
    with open(os.path.join(HERE, "dictionary.dict"), "w") as f:
        f.write("\n".join(lines) + "\n")


def write_frequency(counts, joined):
    rows = [(w, counts[w]) for w in joined]
    rows += FREQUENCY_ONLY
    rows.sort(key=lambda r: (-r[1], r[0]))
    with open(os.path.join(HERE, "frequency.tsv"), "w") as f:
        f.write("word\tcount\n")
        for word, count in rows:
            f.write(f"{word}\t{count}\n")


def write_norms(rated, punches, humor, iconicity, g_val, nrc_val, recall, flags, by_word, rng):
    norms = os.path.join(HERE, "norms")
    os.makedirs(norms, exist_ok=True)

    def covered(table):
        return [w for w in rated if w not in punches[table]]

    with open(os.path.join(norms, "humor.csv"), "w") as f:
        f.write("word,mean,sd\n")
        for w in covered("humor"):
            f.write(f"{w},{humor[w]:.4f},{rng.uniform(0.4, 1.1):.4f}\n")
        for w in UNMATCHED_NORMS:
            f.write(f"{w},{rng.uniform(2.0, 3.5):.4f},{rng.uniform(0.4, 1.1):.4f}\n")

    with open(os.path.join(norms, "iconicity.csv"), "w") as f:
        f.write("word,rating\n")
        for w in covered("iconicity"):
            f.write(f"{w},{iconicity[w]:.4f}\n")

    # Capitalized words and a couple of NA cells; the tool folds case
    # and skips missing cells.
    with open(os.path.join(norms, "glasgow.csv"), "w") as f:
        f.write("word,valence,arousal\n")
        words = covered("glasgow")
        na_words = set(rng.sample(words, 2))
        for w in words:
            valence = "NA" if w in na_words else f"{g_val[w]:.4f}"
            f.write(f"{w.capitalize()},{valence},{rng.uniform(2.0, 7.0):.4f}\n")

    with open(os.path.join(norms, "nrc_vad.tsv"), "w") as f:
        f.write("word\tvalence\tarousal\tdominance\n")
        for w in covered("nrc"):
            f.write(
                f"{w}\t{nrc_val[w]:.4f}\t{rng.uniform(0.1, 0.9):.4f}\t{rng.uniform(0.1, 0.9):.4f}\n"
            )

    with open(os.path.join(norms, "nrc_emotions.tsv"), "w") as f:
        for w in covered("nrc"):
            for emotion in EMOTIONS:
                f.write(f"{w}\t{emotion}\t{flags[w][emotion]}\n")

    with open(os.path.join(norms, "recall.tsv"), "w") as f:
        f.write("word\taccuracy\n")
        for w in covered("recall"):
            f.write(f"{w}\t{recall[w]:.4f}\n")

    with open(os.path.join(norms, "morpholex.tsv"), "w") as f:
        f.write("word\tNmorph\n")
        for w in covered("morpholex"):
            f.write(f"{w}\t{by_word[w][2]}\n")

    with open(os.path.join(norms, "pos.tsv"), "w") as f:
        f.write("word\tpos\n")
        for w in covered("pos"):
            f.write(f"{w}\t{by_word[w][1]}\n")


if __name__ == "__main__":
    main()
