#!/usr/bin/env python3
"""Regenerate the bundled WordNet-format fixture under crates/core/data/wordnet.

Synset byte offsets are computed from the emitted file, so data.<pos> lines
satisfy the WordNet invariant that a synset's offset is its byte position.
"""
import os
import sys

HEADER = [
    "  1 Fixture subset in WordNet 3.x database layout.",
    "  2 Lemmas and synset groupings follow Princeton WordNet 3.0;",
    "  3 offsets are local to this fixture.",
]

# (key, lex_filenum, ss_type, words, pointers[(symbol, target_key)], gloss)
NOUN = [
    ("faculty", 14, "n", ["faculty", "staff"], [("@", "body")], "the body of teachers and administrators at a school"),
    ("staff_personnel", 14, "n", ["staff"], [("@", "body")], "personnel who assist their superior in carrying out an assigned task"),
    ("body", 14, "n", ["body"], [("~", "faculty"), ("~", "staff_personnel")], "a group of persons associated by some common tie or occupation"),
    ("people", 14, "n", ["people"], [], "(plural) any group of human beings collectively"),
    ("citizenry", 14, "n", ["citizenry", "people"], [], "the body of citizens of a state or country"),
    ("person", 3, "n", ["person", "individual", "someone", "somebody", "mortal", "soul"], [], "a human being"),
    ("employee", 18, "n", ["employee"], [("@", "person")], "a worker who is hired to perform a job"),
    ("university_body", 14, "n", ["university"], [], "the body of faculty and students at a university"),
    ("university", 6, "n", ["university"], [], "establishment where a seat of higher learning is housed"),
    ("college", 14, "n", ["college"], [], "an institution of higher education created to educate and grant degrees"),
    ("department", 14, "n", ["department", "section"], [], "a specialized division of a large organization"),
    ("academician", 18, "n", ["academician", "academic", "faculty_member"], [("~", "professor")], "an educator who works at a college or university"),
    ("professor", 18, "n", ["professor", "prof"], [("@", "academician")], "someone who is a member of the faculty at a college or university"),
    ("teacher", 18, "n", ["teacher", "instructor"], [], "a person whose occupation is teaching"),
    ("teaching", 4, "n", ["teaching", "instruction", "pedagogy"], [], "the profession of a teacher"),
    ("survey", 9, "n", ["survey", "study"], [], "a detailed critical inspection"),
    ("report", 10, "n", ["report", "study", "written_report"], [], "a written document describing the findings of some individual or group"),
    ("course", 4, "n", ["course", "course_of_study", "course_of_instruction", "class"], [], "education imparted in a series of lessons or meetings"),
    ("fee", 21, "n", ["fee"], [], "a fixed charge for a privilege or for professional services"),
    ("deadline", 28, "n", ["deadline"], [], "the point in time at which something must be completed"),
    ("admission", 4, "n", ["admission", "admittance"], [], "the act of admitting someone to enter"),
    ("hostel", 6, "n", ["hostel", "youth_hostel", "student_lodging"], [], "inexpensive supervised lodging"),
    ("research", 4, "n", ["research"], [], "systematic investigation to establish facts"),
    ("campus", 15, "n", ["campus"], [], "a field on which the buildings of a university are situated"),
    ("scholarship", 21, "n", ["scholarship"], [], "financial aid provided to a student on the basis of academic merit"),
    ("internship", 4, "n", ["internship"], [], "the position of a student or trainee who works in an organization"),
    ("publication", 10, "n", ["publication"], [], "a copy of a printed work offered for distribution"),
    ("listing", 10, "n", ["list", "listing"], [], "a database containing an ordered array of items"),
    ("map", 6, "n", ["map"], [], "a diagrammatic representation of the earth's surface"),
    ("information", 9, "n", ["information", "info"], [], "a message received and understood"),
    ("detail", 9, "n", ["detail", "item", "point"], [], "an isolated fact that is considered separately from the whole"),
    ("alumnus", 18, "n", ["alumnus", "alumna", "alum", "graduate", "grad"], [], "a person who has received a degree from a school"),
]

VERB = [
    ("supply", 40, "v", ["supply", "provide", "render", "furnish"], [], "give something useful or necessary to"),
    ("cater", 40, "v", ["provide", "supply", "ply", "cater"], [], "give what is desired or needed"),
    ("offer_provide", 40, "v", ["provide", "offer"], [], "make available or accessible, provide or furnish"),
    ("do_make", 41, "v", ["do", "make"], [], "engage in"),
    ("perform", 41, "v", ["perform", "execute", "do"], [], "carry out or perform an action"),
    ("create", 36, "v", ["make", "create"], [], "make or cause to be or to become"),
    ("teach", 32, "v", ["teach", "learn", "instruct"], [], "impart skills or knowledge to"),
    ("name_list", 32, "v", ["name", "list"], [], "give or make a list of; name individually"),
    ("apply", 34, "v", ["apply", "use", "utilize", "utilise", "employ"], [], "put into service; make work or employ for a particular purpose"),
    ("locate", 35, "v", ["locate", "situate"], [], "determine or indicate the place, site, or limits of"),
    ("visit", 38, "v", ["visit", "see"], [], "go to see a place, as for entertainment"),
    ("offer", 40, "v", ["offer", "proffer"], [], "present for acceptance or rejection"),
    ("pay", 40, "v", ["pay"], [], "give money, usually in exchange for goods or services"),
    ("analyze", 31, "v", ["analyze", "analyse", "study", "examine"], [], "consider in detail and subject to an analysis"),
    ("exist", 42, "v", ["exist", "be"], [], "have an existence, be extant"),
    ("form", 41, "v", ["form", "organize", "organise"], [], "create (as an entity)"),
    ("give", 40, "v", ["give"], [], "transfer possession of something concrete or abstract to somebody"),
]

ADJ = [
    ("available", 0, "a", ["available(a)"], [], "obtainable or accessible and ready for use or service"),
    ("regular", 0, "a", ["regular"], [], "in accordance with fixed order or procedure or principle"),
    ("foreign", 0, "s", ["foreign", "strange"], [], "relating to or originating in or characteristic of another place"),
]

ADV = [
    ("online", 2, "r", ["online"], [], "connected to a computer network"),
]

EXC = {
    "noun": [("alumni", ["alumnus"]), ("curricula", ["curriculum"]), ("media", ["medium"])],
    "verb": [("did", ["do"]), ("done", ["do"]), ("gave", ["give"]), ("given", ["give"]), ("made", ["make"]),
             ("paid", ["pay"]), ("studied", ["study"]), ("taught", ["teach"])],
    "adj": [],
    "adv": [],
}

POS_CHAR = {"noun": "n", "verb": "v", "adj": "a", "adv": "r"}


def data_line(entry, offsets, pos_char, with_frames):
    key, lex, ss_type, words, ptrs, gloss = entry
    parts = ["%08d" % offsets[key], "%02d" % lex, ss_type, "%02x" % len(words)]
    for w in words:
        parts += [w, "0"]
    parts.append("%03d" % len(ptrs))
    for sym, target in ptrs:
        parts += [sym, "%08d" % offsets[target], pos_char, "0000"]
    if with_frames:
        parts += ["01", "+", "08", "00"]
    return " ".join(parts) + " | " + gloss + "  \n"


def build(pos, entries, outdir):
    pos_char = POS_CHAR[pos]
    with_frames = pos == "verb"
    offsets = {e[0]: 0 for e in entries}
    header = "".join(h + "\n" for h in HEADER)
    # line lengths do not depend on offset values (fixed width), so two passes suffice
    for _ in range(2):
        pos_bytes = len(header.encode())
        for e in entries:
            offsets[e[0]] = pos_bytes
            pos_bytes += len(data_line(e, offsets, pos_char, with_frames).encode())
    with open(os.path.join(outdir, "data." + pos), "w") as f:
        f.write(header)
        for e in entries:
            f.write(data_line(e, offsets, pos_char, with_frames))

    index = {}
    for e in entries:
        key, _, _, words, ptrs, _ = e
        for w in words:
            lemma = w.split("(")[0].lower()
            slot = index.setdefault(lemma, {"offsets": [], "ptrs": set()})
            slot["offsets"].append(offsets[key])
            slot["ptrs"].update(sym for sym, _ in ptrs)
    with open(os.path.join(outdir, "index." + pos), "w") as f:
        f.write(header)
        for lemma in sorted(index):
            slot = index[lemma]
            ptrs = sorted(slot["ptrs"])
            offs = slot["offsets"]
            fields = [lemma, pos_char, str(len(offs)), str(len(ptrs))] + ptrs
            fields += [str(len(offs)), "0"] + ["%08d" % o for o in offs]
            f.write(" ".join(fields) + "  \n")
    with open(os.path.join(outdir, pos + ".exc"), "w") as f:
        for inflected, bases in sorted(EXC[pos]):
            f.write(" ".join([inflected] + bases) + "\n")


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(root, "crates", "core", "data", "wordnet")
    os.makedirs(outdir, exist_ok=True)
    build("noun", NOUN, outdir)
    build("verb", VERB, outdir)
    build("adj", ADJ, outdir)
    build("adv", ADV, outdir)


if __name__ == "__main__":
    main()
