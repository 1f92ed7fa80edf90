#include "dalg/series_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dalg {

Domain Domain::modular_from_value(u64 m) {
    if (m < 2)
        throw ArithmeticError("modulus must be at least 2");
    // Factor m = p^r by pulling out the smallest prime factor.
    u64 p = m;
    for (u64 d = 2; d * d <= m; ++d) {
        if (m % d == 0) { p = d; break; }
    }
    unsigned r = 0;
    u64 t = m;
    while (t % p == 0) { t /= p; ++r; }
    if (t != 1)
        throw ArithmeticError("modulus " + std::to_string(m) + " is not a prime power");
    return Domain::modular(p, r);
}

std::string Domain::str() const {
    switch (kind) {
        case DomainKind::Integer: return "Z";
        case DomainKind::Rational: return "Q";
        case DomainKind::Modular:
            return "Z/" + std::to_string(p) + (r > 1 ? "^" + std::to_string(r) : "");
    }
    return "?";
}

AnySeries read_series(std::istream& in) {
    std::string line;
    bool have_modulus = false, have_order = false;
    u64 modulus = 0;
    long order = -1;
    std::string name;
    std::vector<std::string> body;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "modulus") {
                if (!(hs >> modulus)) throw ParseError("series file: bad #modulus line");
                have_modulus = true;
            } else if (key == "order") {
                if (!(hs >> order)) throw ParseError("series file: bad #order line");
                have_order = true;
            } else if (key == "name") {
                hs >> std::ws;
                std::getline(hs, name);
            }
            // unknown headers are ignored for forward compatibility
            continue;
        }
        body.push_back(line);
    }
    if (!have_modulus) throw ParseError("series file: missing #modulus header");
    if (!have_order) throw ParseError("series file: missing #order header");
    if (static_cast<long>(body.size()) != order + 1)
        throw ParseError("series file: #order says " + std::to_string(order) + " but " +
                         std::to_string(body.size()) + " coefficients present");

    if (modulus == 0) {
        bool rational = false;
        for (const auto& s : body)
            if (s.find('/') != std::string::npos) { rational = true; break; }
        if (rational) {
            std::vector<mpq_class> c(body.size());
            for (std::size_t i = 0; i < body.size(); ++i) {
                if (c[i].set_str(body[i], 10) != 0)
                    throw ParseError("series file: bad rational '" + body[i] + "'");
                c[i].canonicalize();
            }
            QSeries s = make_qseries(std::move(c));
            s.name = name;
            return s;
        }
        std::vector<mpz_class> c(body.size());
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (c[i].set_str(body[i], 10) != 0)
                throw ParseError("series file: bad integer '" + body[i] + "'");
        }
        ZSeries s = make_zseries(std::move(c));
        s.name = name;
        return s;
    }

    Domain dom = Domain::modular_from_value(modulus);
    std::vector<u64> c(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        try {
            c[i] = std::stoull(body[i]);
        } catch (const std::exception&) {
            throw ParseError("series file: bad residue '" + body[i] + "'");
        }
        if (c[i] >= dom.pr)
            throw ParseError("series file: residue " + body[i] + " not canonical mod " +
                             std::to_string(dom.pr));
    }
    MSeries s(dom, std::move(c));
    s.name = name;
    return s;
}

AnySeries read_series_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open series file: " + path);
    return read_series(in);
}

void write_series(std::ostream& out, const AnySeries& s) {
    Domain d = any_domain(s);
    out << "#modulus " << (d.kind == DomainKind::Modular ? d.pr : 0) << "\n";
    out << "#order " << any_order(s) << "\n";
    if (!any_name(s).empty()) out << "#name " << any_name(s) << "\n";
    std::visit([&](const auto& v) {
        for (const auto& c : v.coeffs()) out << c << "\n";
    }, s);
}

void write_series_file(const std::string& path, const AnySeries& s) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot open series file for writing: " + path);
    write_series(out, s);
}

} // namespace dalg
