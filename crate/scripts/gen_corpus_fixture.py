#!/usr/bin/env python3
"""Generate the fixture web corpus under crates/core/data/corpus.

Writes one small HTML page per document, a manifest.json, and
judgments.tsv marking the pages relevant to the sample query about the
faculty of Anna University. Relevant pages describe faculty and people and
never use the words "teaching" or "staff"; a group of distractor pages
uses "teaching", "staff", "anna" and "university" without being about the
faculty.
"""

import html
import json
import os
import shutil

ROOT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data", "corpus")

RELEVANT_QUERY = "q1"

# (slug, url, title, description, keywords, body, relevant_for)
DOCS = []


def doc(slug, url, title, description, keywords, body, relevant=()):
    DOCS.append((slug, url, title, description, keywords, body, tuple(relevant)))


# --- relevant: faculty / people pages of Anna University -----------------
FACULTY_PAGES = [
    ("au-cse-faculty", "http://www.annauniv.edu/cse/faculty.html",
     "Faculty | Department of Computer Science and Engineering | Anna University",
     "Faculty of the Department of Computer Science and Engineering, Anna University, Chennai: professors, associate professors and assistant professors.",
     "Dr. R. Kumar, Professor and Head, distributed systems. Dr. S. Lakshmi, Professor, data mining. "
     "Dr. P. Anand, Associate Professor, compilers. Ms. K. Priya, Assistant Professor, networks. "
     "Mr. V. Arun, Assistant Professor, databases. Office hours are posted outside each faculty room."),
    ("au-it-people", "http://www.annauniv.edu/it/people.html",
     "People | Department of Information Technology | Anna University",
     "People of the Department of Information Technology at Anna University: faculty members, professors and lecturers.",
     "Dr. M. Devi, Professor, information security. Dr. T. Ravi, Associate Professor, cloud computing. "
     "Mr. G. Hari, Lecturer, web technology. Ms. A. Nithya, Assistant Professor, machine learning. "
     "Research scholars and visiting faculty are listed on a separate page."),
    ("au-ece-faculty", "http://www.annauniv.edu/ece/faculty",
     "Faculty Members | Electronics and Communication Engineering | Anna University",
     "Faculty members of Electronics and Communication Engineering, Anna University: professor, associate professor and lecturer profiles.",
     "Dr. N. Ganesh, Professor, VLSI design. Dr. R. Meena, Associate Professor, signal processing. "
     "Mr. S. Karthik, Lecturer, embedded systems. Ms. D. Revathi, Assistant Professor, antennas. "
     "Each profile lists publications, courses handled and contact details."),
    ("au-mech-people", "http://www.annauniv.edu/mech/people/",
     "People - Mechanical Engineering - Anna University",
     "Faculty and people of the Department of Mechanical Engineering, Anna University, Guindy campus.",
     "Dr. K. Bala, Professor, thermal engineering. Dr. J. Suresh, Professor, manufacturing. "
     "Dr. L. Vidya, Associate Professor, robotics. Mr. P. Mohan, Assistant Professor, design. "
     "Faculty members supervise doctoral research in the department laboratories."),
    ("au-civil-faculty", "http://www.annauniv.edu/civil/faculty.html",
     "Civil Engineering Faculty | Anna University",
     "Faculty directory of the Department of Civil Engineering, Anna University: professors and associate professors with research areas.",
     "Dr. A. Selvam, Professor, structural engineering. Dr. B. Uma, Professor, water resources. "
     "Dr. C. Rajan, Associate Professor, geotechnical engineering. Ms. E. Jaya, Assistant Professor, transportation. "
     "The faculty directory is updated every semester."),
    ("au-maths-faculty", "http://www.annauniv.edu/maths/faculty",
     "Faculty | Department of Mathematics | Anna University Chennai",
     "Faculty of the Department of Mathematics, Anna University Chennai: professor and lecturer profiles.",
     "Dr. H. Prakash, Professor, graph theory. Dr. I. Kavitha, Associate Professor, numerical analysis. "
     "Mr. R. Senthil, Lecturer, statistics. Ms. M. Gowri, Assistant Professor, optimization. "
     "Faculty members offer courses for all engineering programmes."),
    ("au-mba-people", "http://www.annauniv.edu/management/people.html",
     "People | Department of Management Studies | Anna University",
     "People at the Department of Management Studies, Anna University: faculty for the M.B.A programme, professors and lecturers.",
     "Dr. S. Vasanth, Professor, finance. Dr. R. Anitha, Associate Professor, marketing. "
     "Mr. K. Dinesh, Lecturer, operations. Ms. P. Keerthi, Assistant Professor, human resources. "
     "Faculty guide M.B.A students on summer projects and placements."),
    ("au-physics-faculty", "http://www.annauniv.edu/physics/faculty/",
     "Department of Physics Faculty | Anna University",
     "Faculty profiles of the Department of Physics, Anna University: professors, associate professors and assistant professors.",
     "Dr. V. Ramesh, Professor, condensed matter. Dr. G. Latha, Associate Professor, photonics. "
     "Dr. S. Murali, Assistant Professor, nanomaterials. Ms. T. Divya, Assistant Professor, crystal growth. "
     "Faculty research groups welcome project students."),
]
for slug, url, title, desc, body in FACULTY_PAGES:
    doc(slug, url, title, desc, "anna university, faculty, people, professor", body, [RELEVANT_QUERY])

# --- distractors: teaching / staff / anna / university, not faculty lists -
DISTRACTORS = [
    ("au-canteen", "http://www.annauniv.edu/campus/canteen.html", "Canteen Menu | Anna University",
     "Weekly canteen menu for students and staff of Anna University.",
     "The canteen serves teaching and non teaching staff of Anna University from 8 am. Staff tokens are issued at the counter. "
     "Teaching blocks near the canteen close at 6 pm. University canteen staff wear identity cards."),
    ("au-parking", "http://www.annauniv.edu/campus/parking.html", "Parking Permits | Anna University",
     "Parking permits for staff vehicles on the Anna University campus.",
     "Staff parking is available behind the teaching block. Teaching and non teaching staff must display the university sticker. "
     "Anna University security staff check permits daily. Visitors park near the main gate."),
    ("au-staff-union", "http://www.annauniv.edu/notices/staff-union.html", "Non Teaching Staff Union Notice | Anna University",
     "Notice from the non teaching staff union of Anna University.",
     "The non teaching staff union of Anna University meets on Friday. Staff welfare, teaching hall bookings and university "
     "transport will be discussed. All staff members are requested to attend."),
    ("au-teaching-awards", "http://www.annauniv.edu/news/teaching-awards.html", "Best Teaching Practices Workshop | Anna University",
     "Workshop on teaching practices at Anna University for school staff.",
     "Anna University hosts a teaching practices workshop for school teachers and staff from nearby districts. "
     "Teaching aids, staff rooms and university halls are reserved for the event. Staff coordinators will register participants."),
    ("au-holiday", "http://www.annauniv.edu/notices/holiday.html", "Holiday Circular | Anna University",
     "Holiday circular for staff and students of Anna University.",
     "Anna University declares a holiday on Monday. Teaching will resume on Tuesday. Staff on emergency duty report to the "
     "university control room. Teaching schedules are adjusted accordingly for all staff."),
    ("au-staff-quarters", "http://www.annauniv.edu/campus/quarters.html", "Staff Quarters Allotment | Anna University",
     "Allotment of staff quarters on the Anna University campus.",
     "Staff quarters near the teaching blocks of Anna University are allotted by seniority. Staff must apply through the "
     "university estate office. Teaching hours do not affect allotment. Staff families may use the campus clinic."),
    ("au-medical", "http://www.annauniv.edu/campus/health-centre.html", "Health Centre | Anna University",
     "Health centre timings for staff and students of Anna University.",
     "The university health centre serves teaching and non teaching staff of Anna University. Staff insurance cards are "
     "accepted. Teaching departments may request first aid kits. Staff nurses are on duty at night."),
    ("au-library-hours", "http://www.annauniv.edu/library/hours.html", "Library Timings | Anna University",
     "Library hours for staff and students at Anna University.",
     "The university library opens at 8 am for teaching and research. Staff borrowing limits are ten books. Anna University "
     "library staff assist with catalogues. Teaching materials can be reserved by staff."),
    ("au-transport", "http://www.annauniv.edu/campus/transport.html", "Transport Routes | Anna University",
     "Bus routes for staff and students of Anna University.",
     "Anna University buses pick up staff from Tambaram and Anna Nagar. Teaching days start at 8.30 am. Staff bus passes are "
     "renewed yearly at the university transport office. Staff must carry identity cards."),
    ("au-sports", "http://www.annauniv.edu/campus/sports-day.html", "Staff Sports Day | Anna University",
     "Annual sports day for university staff at Anna University.",
     "The staff sports day of Anna University is held in January. Teaching and administrative staff compete in relay, chess "
     "and cricket. Teaching classes end early. University staff families are invited."),
    ("au-elections", "http://www.annauniv.edu/notices/elections.html", "Staff Council Elections | Anna University",
     "Elections to the staff council of Anna University.",
     "Nominations for the Anna University staff council close on Friday. Teaching and non teaching staff vote separately. "
     "The university registrar will announce results. Staff may contact the returning officer."),
    ("au-security", "http://www.annauniv.edu/campus/security.html", "Campus Security | Anna University",
     "Security instructions for staff on the Anna University campus.",
     "Anna University security staff patrol the teaching blocks at night. Staff must lock teaching rooms after use. "
     "University staff should report lost keys. Security staff numbers are listed at every gate."),
]
for slug, url, title, desc, body in DISTRACTORS:
    doc(slug, url, title, desc, "anna university, staff", body)

# --- other university pages ----------------------------------------------
OTHER = [
    ("au-admissions", "http://www.annauniv.edu/admissions/", "Admissions 2012 | Anna University",
     "Admission schedule for undergraduate and postgraduate programmes at Anna University.",
     "Anna University admissions open in May. Applications for M.B.A, M.E and M.S programmes are accepted online. "
     "Counselling dates and the deadline for fee payment are announced on the university website."),
    ("au-hostel", "http://www.annauniv.edu/hostel/", "Hostel | Anna University",
     "Hostel facilities for students at Anna University.",
     "Anna University hostels provide rooms, mess and reading halls for students. Hostel fees are paid each semester. "
     "Wardens allot rooms according to the year of study."),
    ("au-fees", "http://www.annauniv.edu/fees/payment.html", "Fee Payment | Anna University",
     "Fee payment procedure and deadlines at Anna University.",
     "Students pay tuition fees online or at the bank counter. The deadline for payment of fees is the last working day of July. "
     "A fine is charged after the deadline."),
    ("au-placements", "http://www.annauniv.edu/placement/", "Centre for University Industry Collaboration | Anna University",
     "Placement and internship office of Anna University.",
     "The placement centre arranges campus recruitment and summer internships. Companies visit the university between August and March."),
    ("stanford-ms", "http://www.stanford.edu/admissions/ms.html", "M.S Admissions | Stanford University",
     "Last date to apply for the M.S programme at Stanford University.",
     "Applications for the M.S programme at Stanford University close on December 1. Applicants submit transcripts, "
     "recommendation letters and test scores online. The admission committee reviews applications in January."),
    ("stanford-map", "http://www.stanford.edu/maps/campus.html", "Campus Map | Stanford University",
     "Road map and directions to visit the Stanford University campus.",
     "The Stanford University campus map shows roads, parking and buildings. Visitors can reach the campus by road from "
     "Palo Alto. Guided tours start at the visitor centre."),
    ("iit-publications", "http://www.iitm.ac.in/it/publications.html", "Publications | Department of IT | IIT",
     "Publications of professors in the Department of IT at IIT.",
     "Professors of the department of IT at IIT have published widely in journals and conferences. The list of publications "
     "is sorted by year and number of citations."),
    ("iit-research", "http://www.iitm.ac.in/research/collaborations.html", "Research Collaborations | IIT",
     "Research areas at IIT with foreign collaborations.",
     "IIT maintains research collaborations with foreign universities in energy, computing and biotechnology. Joint projects "
     "are funded by national and international agencies."),
    ("sastra-mba", "http://www.sastra.edu/mba/fees.html", "M.B.A Fees and Deadlines | Sastra University",
     "Deadline for payment of fees for the M.B.A course at Sastra University.",
     "Sastra University M.B.A students must complete fee payment before the deadline in June. Late payment attracts a fine. "
     "Scholarships are available for merit students."),
    ("mba-colleges", "http://www.mbaguide.in/colleges/chennai.html", "Colleges for M.B.A in Chennai",
     "List of colleges offering the M.B.A programme in Chennai.",
     "Several colleges in Chennai offer the M.B.A programme, including colleges affiliated to Anna University. Admission is "
     "through entrance tests and interviews."),
    ("me-tambaram", "http://www.collegesearch.in/tambaram/me.html", "Engineering Colleges near Tambaram offering M.E",
     "Colleges located near Tambaram offering regular M.E courses.",
     "Colleges located near Tambaram offer regular M.E courses in computer science, structural engineering and power systems. "
     "Most colleges are reachable by suburban train."),
    ("california-associations", "http://www.universityofcalifornia.edu/students/associations.html",
     "Student Associations | University of California",
     "Associations formed for students at California university campuses.",
     "Students at the University of California form associations for culture, sports and academics. Each association is "
     "registered with the student union."),
    ("uk-financial-aid", "http://www.studyuk.org/funding/internships.html", "Financial Aid for Summer Internships in the UK",
     "Financial aid offered for summer internships in UK universities.",
     "UK universities offer financial aid for summer internships through bursaries and stipends. International students "
     "should check eligibility before applying."),
    ("committee-chairman", "http://www.annauniv.edu/governance/board.html", "Board of Governors | Anna University",
     "Chairman and members of the board and committees of Anna University.",
     "The chairman of the board presides over meetings of the governing committee. Committee members include deans, "
     "government nominees and industry representatives."),
    ("delhi-facilities", "http://www.du.ac.in/research/facilities.html", "Research Facilities | Delhi University",
     "Facilities available in research institutions of Delhi University.",
     "Delhi University research institutions provide laboratories, libraries and computing facilities for scholars."),
    ("mit-correspondence", "http://www.mit.edu/students/distance.html", "Distance Learners | MIT",
     "Information about correspondence students of MIT.",
     "MIT offers open courseware for distance learners. Correspondence students access lectures and assignments online."),
    ("abroad-accounting", "http://www.studyabroad.com/internships/accounting.html", "Accounting Internships Abroad",
     "Universities abroad which provide internships in accounting.",
     "Universities abroad provide internship placements in accounting firms. Students earn credits during the internship."),
    ("us-ms-apply", "http://www.gradschool-us.org/apply/ms.html", "How to Apply Online for M.S in a U.S University",
     "Procedure to apply online for M.S programmes in U.S universities.",
     "To apply online for an M.S in a U.S university, create an account, upload transcripts and pay the application fee."),
    ("tagore-location", "http://www.tagoreuniv.edu/contact/location.html", "Location and Directions | Tagore University",
     "How to reach Tagore University from Anna Nagar and other localities.",
     "Tagore University is located 18 km from Anna Nagar. The campus can be reached by road via the inner ring road."),
    ("anna-nagar-guide", "http://www.chennaiguide.in/anna-nagar.html", "Anna Nagar Locality Guide",
     "Guide to the Anna Nagar locality of Chennai.",
     "Anna Nagar is a residential locality in Chennai with parks, schools and shopping streets."),
    ("chennai-weather", "http://www.chennaiguide.in/weather.html", "Chennai Weather",
     "Monthly weather in Chennai.",
     "Chennai is hot and humid for most of the year, with the north east monsoon bringing rain between October and December."),
    ("cricket-news", "http://www.sportsdaily.in/cricket/chennai.html", "Chennai Cricket Scores",
     "Latest cricket scores from Chennai.",
     "The Chennai team won the final by six wickets. The captain praised the bowlers."),
    ("recipe-dosa", "http://www.cookbook.in/dosa.html", "How to Make Dosa",
     "A simple dosa recipe.",
     "Soak rice and lentils overnight, grind to a batter and ferment. Spread thin on a hot griddle."),
    ("bank-loans", "http://www.bankinfo.in/education-loans.html", "Education Loans",
     "Education loans for university students.",
     "Banks offer education loans covering tuition fees and hostel charges for students admitted to recognised universities."),
    ("scholarships", "http://www.scholarships.in/engineering.html", "Engineering Scholarships",
     "Scholarships and financial aid for engineering students.",
     "Merit scholarships and need based financial aid are available for engineering students in Tamil Nadu."),
    ("au-research", "http://www.annauniv.edu/research/", "Research | Anna University",
     "Research centres of Anna University.",
     "Anna University hosts research centres in energy, nanotechnology and water resources, with collaborations across India."),
    ("au-departments", "http://www.annauniv.edu/departments.html", "Departments | Anna University",
     "List of departments at Anna University.",
     "Anna University has departments of computer science and engineering, information technology, mechanical engineering, "
     "civil engineering, mathematics, physics and management studies."),
    ("au-convocation", "http://www.annauniv.edu/news/convocation.html", "Convocation 2012 | Anna University",
     "Convocation ceremony of Anna University.",
     "The annual convocation of Anna University will be held in the main auditorium. Graduates collect gowns a day before."),
    ("stanford-hostel", "http://www.stanford.edu/housing/", "Student Housing | Stanford University",
     "Housing and hostel options for Stanford University students.",
     "Stanford University guarantees housing for first year graduate students. Rent is billed each quarter."),
    ("cs-syllabus", "http://www.annauniv.edu/cse/syllabus.html", "Syllabus | Computer Science and Engineering | Anna University",
     "Syllabus of the B.E computer science and engineering programme, Anna University.",
     "The syllabus covers programming, data structures, operating systems, networks and databases over eight semesters."),
]
for slug, url, title, desc, body in OTHER:
    doc(slug, url, title, desc, "", body)


def page(title, description, keywords, body):
    meta_kw = f'\n<meta name="keywords" content="{html.escape(keywords)}">' if keywords else ""
    return (
        "<!DOCTYPE html>\n<html>\n<head>\n"
        f"<title>{html.escape(title)}</title>\n"
        f'<meta name="description" content="{html.escape(description)}">{meta_kw}\n'
        "</head>\n<body>\n"
        f"<h1>{html.escape(title)}</h1>\n<p>{html.escape(body)}</p>\n"
        "</body>\n</html>\n"
    )


def main():
    docs_dir = os.path.join(ROOT, "docs")
    if os.path.isdir(docs_dir):
        shutil.rmtree(docs_dir)
    os.makedirs(docs_dir)
    manifest = []
    judgments = []
    for slug, url, title, desc, keywords, body, relevant in DOCS:
        name = f"docs/{slug}.html"
        with open(os.path.join(ROOT, name), "w", encoding="utf-8") as f:
            f.write(page(title, desc, keywords, body))
        manifest.append({"url": url, "title": title, "file": name})
        for q in relevant:
            judgments.append(f"{q}\t{url}")
    urls = [m["url"] for m in manifest]
    assert len(urls) == len(set(urls)), "duplicate url"
    with open(os.path.join(ROOT, "manifest.json"), "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=1)
        f.write("\n")
    with open(os.path.join(ROOT, "judgments.tsv"), "w", encoding="utf-8") as f:
        f.write("# q1 = list the teaching staff in anna university\n")
        f.write("\n".join(judgments) + "\n")
    print(f"{len(manifest)} documents, {len(judgments)} judgments")


if __name__ == "__main__":
    main()
