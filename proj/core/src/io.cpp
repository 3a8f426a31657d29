#include "searchlight/polyhedron.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace searchlight {

std::optional<Scalar> parse_scalar(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto is_int = [](const std::string& s) {
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) return std::nullopt;
            return Scalar(mpz_class(text));
        }
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        mpz_class d(den);
        if (d == 0) return std::nullopt;
        Scalar q(mpz_class(num), d);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string format_scalar(const Scalar& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string format_decimal(const Scalar& x, int digits) {
    mpz_class pow10(1);
    for (int i = 0; i < digits; ++i) pow10 *= 10;
    // Round to nearest, ties away from zero.
    mpz_class num = x.get_num() * pow10 * 2;
    mpz_class den = x.get_den() * 2;
    mpz_class half_den = den / 2;
    mpz_class shifted = sgn(x) >= 0 ? mpz_class(num + half_den) : mpz_class(num - half_den);
    mpz_class scaled;
    if (sgn(x) >= 0)
        mpz_fdiv_q(scaled.get_mpz_t(), shifted.get_mpz_t(), den.get_mpz_t());
    else
        mpz_cdiv_q(scaled.get_mpz_t(), shifted.get_mpz_t(), den.get_mpz_t());
    bool neg = scaled < 0;
    mpz_class abs_scaled = abs(scaled);
    std::string s = abs_scaled.get_str();
    if (digits == 0) return (neg ? "-" : "") + s;
    while (s.size() <= static_cast<std::size_t>(digits)) s.insert(s.begin(), '0');
    s.insert(s.size() - digits, ".");
    return (neg ? "-" : "") + s;
}

namespace {

[[noreturn]] void bad(int line, const std::string& msg) {
    std::ostringstream os;
    os << "parse error (line " << line << "): " << msg;
    throw std::runtime_error(os.str());
}

struct Tokenizer {
    std::istream& in;
    int line_no = 0;

    /// Next non-empty line split on whitespace, with '#' comments removed.
    std::optional<std::vector<std::string>> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (!toks.empty()) return toks;
        }
        return std::nullopt;
    }
};

std::optional<Axis> parse_axis(const std::string& s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    return std::nullopt;
}

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        default: return "z";
    }
}

}  // namespace

RawSolid parse_orthopoly(std::istream& in) {
    Tokenizer tz{in};
    auto header = tz.next();
    if (!header || header->size() != 2 || (*header)[0] != "orthopoly" || (*header)[1] != "v1")
        bad(tz.line_no, "expected header 'orthopoly v1'");

    std::map<std::string, Scalar> named;
    auto value = [&](const std::string& tok) -> std::optional<Scalar> {
        if (auto v = parse_scalar(tok)) return v;
        auto it = named.find(tok);
        if (it != named.end()) return it->second;
        return std::nullopt;
    };

    RawSolid solid;
    bool in_coords = false;
    while (auto toks = tz.next()) {
        const auto& t = *toks;
        if (t[0] == "coords") {
            if (t.size() != 1) bad(tz.line_no, "'coords' takes no arguments");
            in_coords = true;
        } else if (t[0] == "face") {
            in_coords = false;
            if (t.size() != 3) bad(tz.line_no, "expected 'face <axis> <offset>'");
            auto ax = parse_axis(t[1]);
            if (!ax) bad(tz.line_no, "unknown axis '" + t[1] + "'");
            auto off = value(t[2]);
            if (!off) bad(tz.line_no, "bad offset '" + t[2] + "'");
            solid.faces.push_back({*ax, *off, {}});
        } else if (t[0] == "ring") {
            if (solid.faces.empty()) bad(tz.line_no, "'ring' before any 'face'");
            if (t.size() < 3 || (t.size() - 1) % 2 != 0)
                bad(tz.line_no, "'ring' needs an even number of coordinates");
            std::vector<Point2> ring;
            for (std::size_t i = 1; i + 1 < t.size(); i += 2) {
                auto u = value(t[i]), v = value(t[i + 1]);
                if (!u || !v) bad(tz.line_no, "bad ring coordinate");
                ring.push_back({*u, *v});
            }
            solid.faces.back().rings.push_back(std::move(ring));
        } else if (in_coords) {
            if (t.size() != 2) bad(tz.line_no, "expected '<name> <value>' in coords section");
            auto v = parse_scalar(t[1]);
            if (!v) bad(tz.line_no, "bad coordinate value '" + t[1] + "'");
            named[t[0]] = *v;
        } else {
            bad(tz.line_no, "unknown directive '" + t[0] + "'");
        }
    }
    return solid;
}

RawSolid parse_orthopoly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_orthopoly(in);
}

void serialize_orthopoly(const RawSolid& s, std::ostream& out) {
    out << "orthopoly v1\n";
    for (const FaceInput& f : s.faces) {
        out << "face " << axis_name(f.axis) << " " << format_scalar(f.offset) << "\n";
        for (const auto& ring : f.rings) {
            out << "ring";
            for (const Point2& p : ring)
                out << " " << format_scalar(p.x) << " " << format_scalar(p.y);
            out << "\n";
        }
    }
}

std::string serialize_orthopoly(const RawSolid& s) {
    std::ostringstream os;
    serialize_orthopoly(s, os);
    return os.str();
}

}  // namespace searchlight
