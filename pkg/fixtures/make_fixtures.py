#!/usr/bin/env python3
"""Regenerate the shipped benchmark fixture (deterministic).

Builds ``newsgroups2k/``: a synthetic 2,000-document corpus styled after
the 20 Newsgroups benchmark (20 themed categories, Zipf word use, a
shared general vocabulary, cross-category noise and some blended
documents), plus an aligned 384-dimensional embedding container in the
EMB1 format standing in for a MiniLM-class encoder. Real datasets are
not redistributable here; this fixture exists so the pipeline and the
metric stack can be exercised end to end at desk scale.

Run from the repository root:

    python3 fixtures/make_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from topiceval.corpusio import build_archive, write_archive
from topiceval.embeddings import EmbeddingMatrix, write_embeddings

SEED = 20250810
N_PER_CATEGORY = 100
DIM = 384
BLEND_FRACTION = 0.12  # documents mixing two categories
CROSS_NOISE = 0.05  # per-token chance of borrowing another category's word
CATEGORY_SHARE = 0.52  # per-token chance of an own-category word
EMBED_NOISE = 0.45
BLEND_EMBED = (0.62, 0.38)

# Inside a category, words split into a small core plus three sub-themes
# (mimicking discussion threads); a document leans on one sub-theme. Sub-theme
# words of the same category rarely meet in one document, which keeps window
# co-occurrence heterogeneous the way real newsgroup text is.
N_CORE = 3
N_THEMES = 3
CORE_SHARE = 0.30  # of category tokens
THEME_LEAK = 0.0  # category tokens drawn from the other sub-themes

CATEGORIES = {
    "space": """orbit shuttle launch nasa satellite lunar mars rocket astronaut
        mission spacecraft telescope comet asteroid gravity payload booster
        cosmonaut galaxy solar probe module capsule propulsion perigee apogee
        thruster orbiter stardust reentry""",
    "hockey": """hockey goal puck goalie rink skate playoff defenseman penalty
        overtime roster wing forward shutout assist faceoff blueline referee
        standings linesman icing powerplay slapshot breakaway crease zamboni
        bruins canucks oilers stanley""",
    "baseball": """baseball pitcher inning batter homerun catcher outfield
        bullpen strikeout umpire dugout shortstop fastball curveball slugger
        walkoff doubleheader mound pennant rookie baseman pinch bunt
        designated knuckleball screwball yankees cubs braves""",
    "cars": """engine sedan chassis dealer mileage transmission brake clutch
        coupe convertible odometer horsepower torque radiator alternator
        muffler spoiler hatchback carburetor dashboard headlight windshield
        fender bumper grille camshaft crankshaft turbocharged wagon""",
    "motorcycles": """motorcycle rider helmet handlebar throttle sprocket
        sidecar fairing kickstand saddlebag moped scooter biker cruiser
        touring superbike exhaust footpeg swingarm fork lean countersteer
        visor gauntlet paddock kawasaki ducati harley yamaha""",
    "guns": """firearm rifle pistol holster ammunition caliber trigger barrel
        magazine revolver shotgun recoil sighting silencer gunsmith cartridge
        musket carbine buckshot reload safety rangemaster bolt hammer
        derringer bipod scope crossbow armory""",
    "mideast": """territory treaty border embassy diplomat ceasefire mandate
        refugee settlement annex protest delegation occupation resolution
        sanction envoy militia sovereignty armistice accord partition exile
        intifada consulate negotiator truce frontier peacekeeping homeland""",
    "politics": """election senator congress ballot legislation policy lobbyist
        campaign caucus filibuster amendment veto incumbent electorate
        referendum gerrymander subsidy deficit taxation welfare partisan
        primaries debate poll governor mayor constituency statehouse""",
    "religion": """scripture gospel parish congregation sermon baptism faith
        prayer theology prophet covenant salvation worship liturgy apostle
        doctrine pilgrimage monastery chapel hymn communion blessing diocese
        parable repentance sabbath psalm clergy""",
    "philosophy": """philosophy skeptic reasoning premise fallacy metaphysics
        epistemology ethics moralist dialectic empiricism rationalism paradox
        syllogism axiom nihilism determinism freewill conscience materialism
        dualism utilitarian stoic existential absurdism relativism dogma
        agnostic""",
    "graphics": """rendering polygon shader raster texture vertex wireframe
        antialiasing sprite bitmap palette gradient viewport raytracer
        keyframe spline quaternion mesh voxel animation compositing dithering
        mipmap specular ambient occlusion framebuffer pixel""",
    "windows": """desktop installer registry driver taskbar filesystem folder
        shortcut dialog toolbar notepad spreadsheet clipboard printer font
        icon wallpaper volume bootloader defragment shell update patch
        license wizard autoexec msdos directory""",
    "mac": """macintosh finder quadra powerbook appletalk firmware trackpad
        claris hypercard sysop chooser desktopbus scsi motherboard expansion
        powerpc localtalk imagewriter stylewriter quicktime resedit installer2
        restart eject chime beachball classic duo""",
    "pchardware": """cpu chipset cache dimm jumper heatsink soldering slot bios
        interrupt peripheral controller busmaster coprocessor oscillator
        voltage wattage socket baseboard firmware2 upgrade benchmark dip
        megahertz nanosecond silicon wafer diode""",
    "electronics": """circuit resistor capacitor inductor transistor amplifier
        oscillator2 voltmeter soldering2 breadboard microcontroller relay
        rectifier transformer impedance frequency waveform oscilloscope diode2
        potentiometer thermistor semiconductor anode cathode schematic
        multimeter triode""",
    "cryptography": """cipher encryption decryption keypair plaintext
        ciphertext hashing signature entropy block stream nonce padding
        protocol handshake certificate authority escrow clipper wiretap
        privacy anonymity backdoor algorithm modulus exponent factoring
        primality""",
    "medicine": """diagnosis symptom patient clinical therapy vaccine infection
        antibiotic physician syndrome dosage chronic outbreak immunology
        pathology cardiology oncology prescription remission biopsy placebo
        anesthesia surgery triage prognosis epidemiology antiviral""",
    "forsale": """forsale shipping auction bargain invoice warranty refund
        postage courier listing buyer seller mint condition wholesale retail
        discount clearance barter appraisal consignment collectible surplus
        catalog freight escrow2 layaway""",
    "networking": """network router packet ethernet gateway bandwidth latency
        subnet firewall modem protocol2 socket2 topology broadcast multicast
        collision token ring backbone repeater hub bridge throughput dialup
        baudrate handshake2 datagram""",
    "climate": """climate rainfall drought monsoon humidity forecast
        temperature glacier emission carbon ozone aerosol precipitation
        evaporation hurricane cyclone frontal isobar barometer thermometer
        elnino jetstream permafrost albedo biosphere wetland erosion""",
}

SHARED = """people time year work world part group number fact case point
    place right hand kind state question problem company interest money
    service line order result member change idea level body book school
    family area water story lot month day night home room friend father
    mother study word business issue side head house country community
    president team minute moment office research road program market sense
    nature series action effect period2 experience field process history
    party information power decision";
    note thing course end value reason system type form report article
    paper post mail news list subject reply message opinion view comment
    argument example source answer claim evidence support detail term
    readers topic release version update2 review summary section title
    reference author editor press media public record plan effort attempt
    approach method standard model test measure figure table data analysis
    average total share growth rate percent increase decrease trend range
    limit scale balance weight size""".replace('";', "")


def category_words() -> dict[str, list[str]]:
    out = {}
    for name, blob in CATEGORIES.items():
        words = blob.split()
        assert len(words) >= 26, (name, len(words))
        out[name] = words
    all_words = [w for ws in out.values() for w in ws]
    assert len(all_words) == len(set(all_words)), "category vocabularies overlap"
    return out


def zipf_probs(n: int, a: float) -> np.ndarray:
    p = 1.0 / np.arange(1, n + 1) ** a
    return p / p.sum()


class CategorySampler:
    """Draws category words from a core list plus one leaning sub-theme."""

    def __init__(self, words: list[str]) -> None:
        self.core = words[:N_CORE]
        rest = words[N_CORE:]
        per = len(rest) // N_THEMES
        self.themes = [rest[i * per: (i + 1) * per] for i in range(N_THEMES)]
        self.themes[-1].extend(rest[N_THEMES * per:])
        self.core_probs = zipf_probs(len(self.core), 1.1)
        self.theme_probs = [zipf_probs(len(t), 1.2) for t in self.themes]

    def draw(self, rng: np.random.Generator, theme: int) -> str:
        u = rng.random()
        if u < CORE_SHARE:
            return self.core[rng.choice(len(self.core), p=self.core_probs)]
        if u < CORE_SHARE + THEME_LEAK:
            other = int(rng.integers(N_THEMES - 1))
            if other >= theme:
                other += 1
            theme = other
        t = self.themes[theme]
        return t[rng.choice(len(t), p=self.theme_probs[theme])]


def render_text(rng: np.random.Generator, tokens: list[str]) -> str:
    """Group tokens into sentences so the raw text looks like prose."""
    sentences = []
    i = 0
    while i < len(tokens):
        n = int(rng.integers(6, 14))
        chunk = tokens[i: i + n]
        i += n
        sentences.append(" ".join(chunk).capitalize() + ".")
    return " ".join(sentences)


def main() -> None:
    out_dir = Path(__file__).resolve().parent / "newsgroups2k"
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(SEED)

    cats = category_words()
    names = list(cats.keys())
    samplers = {n: CategorySampler(ws) for n, ws in cats.items()}
    shared = SHARED.split()
    assert len(shared) == len(set(shared)), "shared vocabulary has duplicates"
    shared_probs = zipf_probs(len(shared), 1.05)

    n_docs = N_PER_CATEGORY * len(names)
    blended = rng.random(n_docs) < BLEND_FRACTION

    docs: list[tuple[str, str]] = []
    doc_cats: list[tuple[int, int | None]] = []
    for d in range(n_docs):
        c = d % len(names)
        c2 = None
        if blended[d]:
            c2 = int(rng.integers(len(names) - 1))
            if c2 >= c:
                c2 += 1
        doc_cats.append((c, c2))
        theme = int(rng.integers(N_THEMES))
        theme2 = int(rng.integers(N_THEMES))
        length = int(np.clip(rng.lognormal(4.5, 0.45), 40, 400))
        tokens = []
        for _ in range(length):
            u = rng.random()
            if u < CATEGORY_SHARE:
                src, src_theme = c, theme
                if c2 is not None and rng.random() < 0.4:
                    src, src_theme = c2, theme2
                tokens.append(samplers[names[src]].draw(rng, src_theme))
            elif u < CATEGORY_SHARE + CROSS_NOISE:
                other = int(rng.integers(len(names)))
                tokens.append(samplers[names[other]].draw(rng, int(rng.integers(N_THEMES))))
            else:
                tokens.append(shared[rng.choice(len(shared), p=shared_probs)])
        doc_id = f"{names[c]}-{d:04d}"
        docs.append((doc_id, render_text(rng, tokens)))

    with open(out_dir / "docs.jsonl", "w", encoding="utf-8") as fh:
        for doc_id, text in docs:
            fh.write(json.dumps({"id": doc_id, "text": text}) + "\n")

    archive = build_archive(docs)
    write_archive(out_dir / "corpus.tpc", archive)

    centers = rng.standard_normal((len(names), DIM))
    centers /= np.linalg.norm(centers, axis=1, keepdims=True)
    rows = np.empty((n_docs, DIM), dtype=np.float64)
    for d, (c, c2) in enumerate(doc_cats):
        base = centers[c] if c2 is None else BLEND_EMBED[0] * centers[c] + BLEND_EMBED[1] * centers[c2]
        noise = rng.standard_normal(DIM) / np.sqrt(DIM)
        rows[d] = base + EMBED_NOISE * noise
    rows /= np.linalg.norm(rows, axis=1, keepdims=True)
    emb = EmbeddingMatrix(rows.astype(np.float32), [doc_id for doc_id, _ in docs])
    write_embeddings(out_dir / "minilm_l6.emb", emb)

    print(f"wrote {n_docs} docs, vocab {len(archive.vocab)}, "
          f"tokens {sum(len(s) for s in archive.sequences)} -> {out_dir}")


if __name__ == "__main__":
    main()
