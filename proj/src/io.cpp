#include "surfcode/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "surfcode/mpoly.hpp"

namespace surfcode::io {

const gf::Field& parse_field(const std::string& s) {
    const size_t caret = s.find('^');
    int p, e = 1;
    if (caret == std::string::npos) {
        const int q = std::stoi(s);
        // Plain q: factor as p^e.
        int base = 0;
        for (int cand = 2; cand <= q; ++cand) {
            if (!gf::is_prime(cand)) continue;
            int v = q, k = 0;
            while (v % cand == 0) {
                v /= cand;
                ++k;
            }
            if (v == 1 && k >= 1) {
                base = cand;
                e = k;
                break;
            }
            if (q % cand == 0) break;
        }
        if (!base) throw std::invalid_argument("io: '" + s + "' is not a prime power");
        p = base;
    } else {
        p = std::stoi(s.substr(0, caret));
        e = std::stoi(s.substr(caret + 1));
    }
    return gf::Field::get(p, e);
}

namespace {

int var_index(char c) {
    switch (std::tolower(static_cast<unsigned char>(c))) {
        case 'x': return 0;
        case 'y': return 1;
        case 'z': return 2;
        case 't': return 3;
        default: return -1;
    }
}

struct TermData {
    mpoly::Exp e{0, 0, 0, 0};
    uint8_t c;
};

// poly := ['-'] term (('+'|'-') term)*
// term := factor ('*' factor)*
// factor := int | '(' element literal ')' | var ['^' int]
class PolyParser {
public:
    PolyParser(const std::string& s, const gf::Field& f) : s_(s), f_(f) {}

    std::vector<TermData> parse() {
        std::vector<TermData> terms;
        skip_ws();
        bool neg = eat('-');
        while (true) {
            TermData t = term();
            if (neg) t.c = f_.neg(t.c);
            terms.push_back(t);
            skip_ws();
            if (eat('+'))
                neg = false;
            else if (eat('-'))
                neg = true;
            else
                break;
        }
        skip_ws();
        if (pos_ != s_.size()) throw std::invalid_argument("io: trailing input in polynomial '" + s_ + "'");
        return terms;
    }

private:
    TermData term() {
        TermData t;
        t.c = 1;
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ >= s_.size()) break;
            const char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                t.c = f_.mul(t.c, f_.from_int(integer()));
            } else if (c == '(') {
                ++pos_;
                const size_t close = s_.find(')', pos_);
                if (close == std::string::npos) throw std::invalid_argument("io: unbalanced parenthesis");
                t.c = f_.mul(t.c, f_.parse(strip(s_.substr(pos_, close - pos_))));
                pos_ = close + 1;
            } else if (var_index(c) >= 0) {
                const int v = var_index(c);
                ++pos_;
                int e = 1;
                skip_ws();
                if (eat('^')) e = integer();
                t.e[v] = static_cast<uint8_t>(t.e[v] + e);
            } else {
                break;
            }
            first = false;
            skip_ws();
            if (!eat('*')) break;
        }
        if (first) throw std::invalid_argument("io: empty term in polynomial '" + s_ + "'");
        return t;
    }

    int integer() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw std::invalid_argument("io: expected integer in '" + s_ + "'");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    static std::string strip(std::string v) {
        std::erase_if(v, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    const std::string& s_;
    const gf::Field& f_;
    size_t pos_ = 0;
};

std::string drop_eq_zero(std::string s) {
    const size_t eq = s.find('=');
    if (eq != std::string::npos) s = s.substr(0, eq);
    return s;
}

}  // namespace

projgeo::Surface parse_surface(const std::string& s, const gf::Field& f) {
    const auto terms = PolyParser(drop_eq_zero(s), f).parse();
    mpoly::MPoly p(f, 4);
    int deg = -1;
    for (const auto& t : terms) {
        const int d = mpoly::total_degree(t.e);
        if (deg < 0) deg = d;
        if (d != deg) throw std::invalid_argument("io: surface equation is not homogeneous");
        p.add_term(t.e, t.c);
    }
    if (p.is_zero()) throw std::invalid_argument("io: zero surface equation");
    return projgeo::Surface(f, deg, std::move(p));
}

std::vector<uint8_t> parse_plane(const std::string& s, const gf::Field& f) {
    const auto terms = PolyParser(drop_eq_zero(s), f).parse();
    std::vector<uint8_t> coeffs(4, 0);
    for (const auto& t : terms) {
        if (mpoly::total_degree(t.e) != 1) throw std::invalid_argument("io: plane equation is not linear");
        for (int v = 0; v < 4; ++v)
            if (t.e[v]) coeffs[v] = f.add(coeffs[v], t.c);
    }
    return coeffs;
}

projgeo::Point parse_point(const std::string& s, const gf::Field& f) {
    std::string body = s;
    std::erase_if(body, [](char c) { return c == '(' || c == ')'; });
    std::replace(body.begin(), body.end(), ':', ' ');
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::vector<uint8_t> coords;
    std::string tok;
    while (in >> tok) coords.push_back(f.parse(tok));
    if (coords.size() < 2) throw std::invalid_argument("io: bad point literal '" + s + "'");
    return projgeo::Point(f, coords);
}

std::vector<projgeo::Point> parse_point_list(const std::string& text, const gf::Field& f) {
    std::vector<projgeo::Point> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back(parse_point(line, f));
    }
    return out;
}

std::vector<projgeo::Point> apply_point_order(const std::vector<projgeo::Point>& points,
                                              const std::vector<projgeo::Point>& order) {
    if (points.size() != order.size())
        throw std::invalid_argument("io: point order file has wrong cardinality");
    for (const auto& p : order)
        if (std::find(points.begin(), points.end(), p) == points.end())
            throw std::invalid_argument("io: point order file lists " + p.str() + " which is not in the set");
    return order;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace surfcode::io
