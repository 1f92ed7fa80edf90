#include "dalg/recurrence.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace dalg {

mpq_class UnivarPolyQ::eval(long n) const {
    mpq_class x = 0;
    for (std::size_t k = c.size(); k-- > 0;)
        x = x * n + c[k];
    return x;
}

bool UnivarPolyQ::is_zero() const {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

mpq_class BivarPolyQ::eval(long i, long n) const {
    mpq_class acc = 0;
    for (const auto& m : monos) {
        mpq_class t = m.c;
        for (unsigned k = 0; k < m.di; ++k) t *= i;
        for (unsigned k = 0; k < m.dn; ++k) t *= n;
        acc += t;
    }
    return acc;
}

QSeries convolution_series(const RecurrenceSpec& spec, long N) {
    if (spec.initial.size() < 2)
        throw ArithmeticError("convolution_series: need at least h_0 and h_1");
    std::vector<mpq_class> h(spec.initial);
    h.reserve(N + 1);
    long first_n = static_cast<long>(spec.initial.size()) - 2;
    for (long n = first_n; n + 2 <= N; ++n) {
        mpq_class rhs = 0;
        if (!spec.single.is_zero())
            rhs += spec.single.eval(n) * h[n + 1];
        for (const auto& cv : spec.conv) {
            for (long i = 1; i <= n; ++i) {
                long ia = i + cv.a, ib = n - i + cv.b;
                if (ia < 0 || ib < 0 || ia > n + 1 || ib > n + 1)
                    throw ArithmeticError("convolution_series: step rule reaches unknown terms");
                mpq_class w = cv.weight.eval(i, n);
                if (w != 0) rhs += w * h[ia] * h[ib];
            }
        }
        mpq_class L = spec.lead.c.empty() ? mpq_class(1) : spec.lead.eval(n);
        if (L == 0)
            throw ArithmeticError("convolution_series: leading factor vanishes at n = " +
                                  std::to_string(n));
        h.push_back(rhs / L);
    }
    h.resize(N + 1);
    QSeries out = make_qseries(std::move(h));
    out.name = spec.name;
    return out;
}

std::vector<double> convolution_series_scaled(const RecurrenceSpec& spec, long N) {
    // b_n = h_n / n!; every factorial ratio that appears is evaluated
    // through lgamma so nothing overflows.
    std::vector<double> lf(N + 3, 0.0);
    for (long k = 2; k < N + 3; ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
    auto lfact = [&](long k) { return lf[k]; };

    std::vector<double> b;
    for (std::size_t k = 0; k < spec.initial.size(); ++k)
        b.push_back(spec.initial[k].get_d() * std::exp(-lfact(static_cast<long>(k))));
    long first_n = static_cast<long>(spec.initial.size()) - 2;
    for (long n = first_n; n + 2 <= N; ++n) {
        double rhs = 0;
        if (!spec.single.is_zero())
            rhs += spec.single.eval(n).get_d() * b[n + 1] * std::exp(lfact(n + 1) - lfact(n + 2));
        for (const auto& cv : spec.conv) {
            for (long i = 1; i <= n; ++i) {
                long ia = i + cv.a, ib = n - i + cv.b;
                double w = cv.weight.eval(i, n).get_d();
                if (w == 0) continue;
                rhs += w * b[ia] * b[ib] * std::exp(lfact(ia) + lfact(ib) - lfact(n + 2));
            }
        }
        double L = spec.lead.c.empty() ? 1.0 : spec.lead.eval(n).get_d();
        b.push_back(rhs / L);
    }
    b.resize(N + 1);
    return b;
}

// ---- config parsing ----

namespace {

mpq_class parse_rat(const std::string& tok) {
    mpq_class q;
    if (q.set_str(tok, 10) != 0)
        throw ParseError("recurrence spec: bad rational '" + tok + "'");
    q.canonicalize();
    return q;
}

UnivarPolyQ parse_poly(std::istringstream& ls) {
    UnivarPolyQ p;
    std::string tok;
    while (ls >> tok) p.c.push_back(parse_rat(tok));
    return p;
}

} // namespace

RecurrenceSpec parse_recurrence_spec(std::istream& in) {
    RecurrenceSpec spec;
    std::string line;
    ConvolutionTerm* open_conv = nullptr;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "name") {
            ls >> std::ws;
            std::getline(ls, spec.name);
        } else if (key == "initial") {
            std::string tok;
            while (ls >> tok) spec.initial.push_back(parse_rat(tok));
        } else if (key == "lead") {
            spec.lead = parse_poly(ls);
        } else if (key == "single") {
            spec.single = parse_poly(ls);
        } else if (key == "conv") {
            ConvolutionTerm cv;
            if (!(ls >> cv.a >> cv.b))
                throw ParseError("recurrence spec: conv needs offsets a b");
            spec.conv.push_back(cv);
            open_conv = &spec.conv.back();
        } else if (key == "w") {
            if (!open_conv)
                throw ParseError("recurrence spec: w outside conv block");
            std::string ctok;
            unsigned di, dn;
            if (!(ls >> ctok >> di >> dn))
                throw ParseError("recurrence spec: w needs coeff deg_i deg_n");
            open_conv->weight.monos.push_back({parse_rat(ctok), di, dn});
        } else if (key == "endconv") {
            open_conv = nullptr;
        } else {
            throw ParseError("recurrence spec: unknown directive '" + key + "'");
        }
    }
    if (spec.initial.size() < 2)
        throw ParseError("recurrence spec: missing or short initial line");
    return spec;
}

RecurrenceSpec parse_recurrence_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open recurrence spec: " + path);
    return parse_recurrence_spec(in);
}

// ---- planar triangulation series ----

RecurrenceSpec tutte_spec(const mpq_class& q) {
    // q (n+1) (n+2) h_{n+2} = q (q-4) (3n-1) (3n-2) h_{n+1}
    //                        + 2 sum_{i=1}^{n} i (i+1) (3n-3i+1) h_{i+1} h_{n-i+2}
    if (q == 0)
        throw ArithmeticError("tutte_spec: q must be nonzero");
    RecurrenceSpec s;
    s.name = "tutte";
    s.initial = {mpq_class(0), mpq_class(0), q * (q - 1)};
    // L(n) = q (n^2 + 3n + 2)
    s.lead.c = {2 * q, 3 * q, q};
    // S(n) = q (q-4) (9n^2 - 9n + 2)
    mpq_class qq4 = q * (q - 4);
    s.single.c = {2 * qq4, -9 * qq4, 9 * qq4};
    // w(i, n) = 2 i (i+1) (3n - 3i + 1) = (6n+2) i^2 + (6n+2) i - 6 i^3 - 6 i^2
    ConvolutionTerm cv;
    cv.a = 1;
    cv.b = 2;
    cv.weight.monos = {
        {mpq_class(2), 1, 0},   // 2 i
        {mpq_class(6), 1, 1},   // 6 i n
        {mpq_class(-4), 2, 0},  // -4 i^2  (= 2 i^2 + (-6) i^2)
        {mpq_class(6), 2, 1},   // 6 i^2 n
        {mpq_class(-6), 3, 0},  // -6 i^3
    };
    s.conv.push_back(cv);
    return s;
}

QSeries tutte_series(const mpq_class& q, long N) {
    QSeries s = convolution_series(tutte_spec(q), N);
    s.name = "tutte_q";
    return s;
}

QSeries tutte_family(const mpq_class& A, long N) {
    if (A == 0)
        throw ArithmeticError("tutte_family: A must be nonzero");
    QSeries H = tutte_series(4, N);
    std::vector<mpq_class> out(N + 1, 0);
    // -x + A^3 (x / A^2 + H(x / A^2))
    if (N >= 1) out[1] = A - 1;
    mpq_class Apow = A; // A^{3 - 2n} at n = 1
    for (long n = 2; n <= N; ++n) {
        Apow /= A * A;
        out[n] = H.at(n) * Apow;
    }
    QSeries s = make_qseries(std::move(out));
    s.name = "tutte_family";
    return s;
}

QSeries hypergeometric_series(const HypergeometricSpec& spec, long N) {
    if (spec.arg_power < 1)
        throw ArithmeticError("hypergeometric_series: arg_power must be positive");
    std::vector<mpq_class> out(N + 1, 0);
    mpq_class term = 1;
    for (long n = 0; n * spec.arg_power <= N; ++n) {
        out[n * spec.arg_power] = term;
        mpq_class num = spec.scale, den = n + 1;
        for (const auto& u : spec.upper) num *= u + n;
        for (const auto& l : spec.lower) {
            mpq_class f = l + n;
            if (f == 0)
                throw ArithmeticError("hypergeometric_series: lower parameter hits a pole");
            den *= f;
        }
        term *= num / den;
    }
    return make_qseries(std::move(out));
}

} // namespace dalg
