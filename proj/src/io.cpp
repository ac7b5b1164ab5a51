#include "floer/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace floer {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

int parse_int(const std::string& s, int line_no) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer, got '" + s + "'");
    }
}

mpq_class parse_rational(const std::string& s, int line_no) {
    // Accept "n" or "p/q" with decimal integers.
    auto valid = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) return false;
        for (std::size_t i = start; i < part.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!valid(num) || !valid(den))
        throw ParseError(line_no, "malformed coefficient '" + s + "'");
    mpz_class n{num}, d{den};
    if (d == 0) throw ParseError(line_no, "zero denominator in '" + s + "'");
    mpq_class q{n, d};
    q.canonicalize();
    return q;
}

std::string rational_str(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return c.get_str();
}

} // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FloerError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ComplexFile parse_complex_file(const std::string& text) {
    ComplexFile file;
    bool have_ring = false;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;

    while (std::getline(is, line)) {
        ++line_no;
        auto tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string& head = tok[0];

        if (head == "ring") {
            if (tok.size() != 2) throw ParseError(line_no, "usage: ring z2|z|q");
            if (have_ring) throw ParseError(line_no, "duplicate ring line");
            if (tok[1] == "z2")
                file.ring.base = BaseRing::Zmod2;
            else if (tok[1] == "z")
                file.ring.base = BaseRing::Z;
            else if (tok[1] == "q")
                file.ring.base = BaseRing::Q;
            else
                throw ParseError(line_no, "unknown ring '" + tok[1] + "'");
            have_ring = true;
        } else if (head == "deg_t") {
            if (tok.size() != 2) throw ParseError(line_no, "usage: deg_t <even int <= 0>");
            if (!have_ring) throw ParseError(line_no, "deg_t before ring line");
            int v = parse_int(tok[1], line_no);
            if (v > 0 || v % 2 != 0) throw ParseError(line_no, "deg_t must be even and <= 0");
            file.deg_t = v;
            file.ring.laurent = true;
        } else if (head == "gen") {
            if (tok.size() != 3) throw ParseError(line_no, "usage: gen <id> <degree>");
            file.gens.push_back({tok[1], parse_int(tok[2], line_no)});
        } else if (head == "diff" || head == "umap" || head == "jmap") {
            if (!have_ring) throw ParseError(line_no, head + " before ring line");
            if (tok.size() != 4 && tok.size() != 5)
                throw ParseError(line_no, "usage: " + head + " <from> <to> <coeff> [<t-exp>]");
            mpq_class coeff = parse_rational(tok[3], line_no);
            int texp = 0;
            if (tok.size() == 5) {
                if (!file.deg_t) throw ParseError(line_no, "t-exponent in a non-Laurent file");
                if (head != "diff") throw ParseError(line_no, "t-exponent only allowed on diff");
                texp = parse_int(tok[4], line_no);
            }
            // Ring sanity here so the error carries a line number.
            if (file.ring.base != BaseRing::Q && coeff.get_den() != 1)
                throw ParseError(line_no, "coefficient '" + tok[3] + "' is not in " + file.ring.name());
            auto entry = std::tuple{tok[1], tok[2], coeff, texp};
            if (head == "diff")
                file.diff.push_back(entry);
            else if (head == "umap")
                file.umap.push_back(entry);
            else
                file.jmap.push_back(entry);
        } else {
            throw ParseError(line_no, "unknown directive '" + head + "'");
        }
    }
    if (!have_ring) throw ParseError(line_no, "missing ring line");
    if (file.deg_t && (!file.umap.empty() || !file.jmap.empty()))
        throw ParseError(line_no, "umap/jmap not supported on Laurent complexes");
    if (!file.umap.empty() && !file.jmap.empty())
        throw ParseError(line_no, "a file may carry umap or jmap, not both");

    std::sort(file.gens.begin(), file.gens.end());
    auto sort_entries = [](auto& v) {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a), std::get<3>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b), std::get<3>(b));
        });
    };
    sort_entries(file.diff);
    sort_entries(file.umap);
    sort_entries(file.jmap);
    return file;
}

ComplexFile load_complex_file(const std::string& path) {
    return parse_complex_file(read_text_file(path));
}

std::string emit_complex_file(const ComplexFile& file) {
    std::ostringstream os;
    os << "ring "
       << (file.ring.base == BaseRing::Zmod2 ? "z2" : file.ring.base == BaseRing::Z ? "z" : "q")
       << "\n";
    if (file.deg_t) os << "deg_t " << *file.deg_t << "\n";
    std::vector<Generator> gens = file.gens;
    std::sort(gens.begin(), gens.end());
    for (const auto& g : gens) os << "gen " << g.id << " " << g.degree << "\n";

    auto emit_entries = [&](const char* head, const auto& entries, bool with_exp) {
        auto sorted = entries;
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a), std::get<3>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b), std::get<3>(b));
        });
        for (const auto& [from, to, coeff, texp] : sorted) {
            if (coeff == 0) continue;
            os << head << " " << from << " " << to << " " << rational_str(coeff);
            if (with_exp && texp != 0) os << " " << texp;
            os << "\n";
        }
    };
    emit_entries("diff", file.diff, file.deg_t.has_value());
    emit_entries("umap", file.umap, false);
    emit_entries("jmap", file.jmap, false);
    return os.str();
}

HeegaardDiagram parse_heegaard_file(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    int genus = -1;
    std::map<std::pair<int, int>, std::vector<IntersectionPoint>> pts;

    while (std::getline(is, line)) {
        ++line_no;
        auto tok = tokenize(line);
        if (tok.empty()) continue;
        if (tok[0] == "genus") {
            if (tok.size() != 2) throw ParseError(line_no, "usage: genus <g>");
            genus = parse_int(tok[1], line_no);
            if (genus < 1) throw ParseError(line_no, "genus must be >= 1");
        } else if (tok[0] == "point") {
            if (genus < 0) throw ParseError(line_no, "point before genus line");
            if (tok.size() != 5) throw ParseError(line_no, "usage: point <alpha> <beta> <id> <+|->");
            int i = parse_int(tok[1], line_no), j = parse_int(tok[2], line_no);
            if (i < 1 || i > genus || j < 1 || j > genus)
                throw ParseError(line_no, "curve index out of range (1-based)");
            int sign;
            if (tok[4] == "+" || tok[4] == "+1")
                sign = +1;
            else if (tok[4] == "-" || tok[4] == "-1")
                sign = -1;
            else
                throw ParseError(line_no, "sign must be + or -");
            pts[{i - 1, j - 1}].push_back({tok[3], sign});
        } else {
            throw ParseError(line_no, "unknown directive '" + tok[0] + "'");
        }
    }
    if (genus < 0) throw ParseError(line_no, "missing genus line");
    try {
        return HeegaardDiagram::build(genus, std::move(pts));
    } catch (const ValidationError& e) {
        throw ParseError(line_no, e.what());
    }
}

HeegaardDiagram load_heegaard_file(const std::string& path) {
    return parse_heegaard_file(read_text_file(path));
}

} // namespace floer
