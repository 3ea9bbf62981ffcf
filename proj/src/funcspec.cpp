/*
 * funcspec.cpp: recursive descent for the function-spec grammar and the
 * canonical printer.
 *
 * The parser owns syntax only: every parsed object passes through the
 * library constructors, which enforce semantics (unimodularity, zeros
 * inside the disk, self-map certificates). Printing uses the shortest
 * round-trip decimal so canonical strings are byte-stable and reparse to
 * the identical object.
 */
#include "cphi/funcspec.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cphi/errors.hpp"

namespace cphi {
namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos + 1); }

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    bool consume(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool consume_kw(const char* kw) {
        skip_ws();
        const size_t len = std::char_traits<char>::length(kw);
        if (s.compare(pos, len, kw) == 0) {
            pos += len;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!consume(c)) fail(std::string("expected '") + c + "' " + what);
    }

    double real(const char* what) {
        skip_ws();
        size_t start = pos;
        double sign = 1.0;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -1.0;
            ++pos;
        }
        double value = 0.0;
        const auto res = std::from_chars(s.data() + pos, s.data() + s.size(), value);
        if (res.ec != std::errc() || res.ptr == s.data() + pos) {
            pos = start;
            fail(std::string("expected a number for ") + what);
        }
        pos = static_cast<size_t>(res.ptr - s.data());
        return sign * value;
    }

    int integer(const char* what) {
        skip_ws();
        int value = 0;
        const auto res = std::from_chars(s.data() + pos, s.data() + s.size(), value);
        if (res.ec != std::errc() || res.ptr == s.data() + pos)
            fail(std::string("expected an integer for ") + what);
        pos = static_cast<size_t>(res.ptr - s.data());
        return value;
    }

    // REAL | [REAL] "pi" ["/" REAL]
    double angle() {
        skip_ws();
        double coef = 1.0;
        if (!consume_kw("pi")) {
            coef = real("an angle");
            if (!consume_kw("pi")) return coef;
        }
        double value = coef * std::numbers::pi;
        if (consume('/')) value /= real("the angle divisor");
        return value;
    }

    cplx complex_value(const char* what) {
        skip_ws();
        if (consume_kw("exp(")) {
            double sign = 1.0;
            if (!consume('+') && consume('-')) sign = -1.0;
            if (!consume('i')) fail("expected 'i' inside exp()");
            const double a = angle();
            expect(')', "closing exp()");
            return std::polar(1.0, sign * a);
        }
        const double first = real(what);
        if (consume('i')) return cplx(0.0, first);
        skip_ws();
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            const size_t mark = pos;
            const double second = real("the imaginary part");
            if (!consume('i')) {
                pos = mark;
                fail("expected 'i' after the imaginary part");
            }
            return cplx(first, second);
        }
        return cplx(first, 0.0);
    }
};

InnerFunction parse_term(Cursor& c) {
    if (c.consume_kw("blaschke(")) {
        std::vector<cplx> points;
        points.push_back(c.complex_value("a Blaschke zero"));
        while (c.consume(',')) points.push_back(c.complex_value("a Blaschke zero"));
        std::vector<int> mults;
        if (c.consume(';')) {
            if (!c.consume_kw("mult=")) c.fail("expected 'mult=' after ';'");
            mults.push_back(c.integer("a multiplicity"));
            while (c.consume(',')) mults.push_back(c.integer("a multiplicity"));
            if (mults.size() != points.size())
                c.fail("multiplicity list must match the zero list");
        }
        c.expect(')', "closing blaschke()");
        std::vector<BlaschkeZero> zeros;
        for (size_t i = 0; i < points.size(); ++i)
            zeros.push_back({points[i], mults.empty() ? 1 : mults[i]});
        return blaschke_product(0, std::move(zeros));
    }
    if (c.consume_kw("atom(")) {
        const cplx point = c.complex_value("the atom location");
        c.expect(',', "between atom location and weight");
        const double weight = c.real("the atom weight");
        c.expect(')', "closing atom()");
        return atomic_singular(point, weight);
    }
    if (c.consume_kw("const(")) {
        const cplx value = c.complex_value("the constant");
        c.expect(')', "closing const()");
        return inner_constant(value);
    }
    if (c.consume('z')) {
        int m = 1;
        if (c.consume('^')) m = c.integer("the power of z");
        return monomial(m);
    }
    c.fail("expected an inner-function term");
}

InnerFunction parse_inner_body(Cursor& c) {
    InnerFunction acc = parse_term(c);
    while (c.consume('*')) acc = inner_product(acc, parse_term(c));
    return acc;
}

LinearFractionalMap parse_map_body(Cursor& c) {
    if (c.consume_kw("mobius(")) {
        const cplx a = c.complex_value("coefficient a");
        c.expect(',', "after coefficient a");
        const cplx b = c.complex_value("coefficient b");
        c.expect(',', "after coefficient b");
        const cplx cc = c.complex_value("coefficient c");
        c.expect(',', "after coefficient c");
        const cplx d = c.complex_value("coefficient d");
        c.expect(')', "closing mobius()");
        return LinearFractionalMap(a, b, cc, d);
    }
    if (c.consume_kw("rot(")) {
        const cplx lambda = c.complex_value("the rotation multiplier");
        c.expect(')', "closing rot()");
        return LinearFractionalMap::rotation(lambda);
    }
    if (c.consume_kw("autom(")) {
        const cplx lambda = c.complex_value("the automorphism multiplier");
        c.expect(',', "between multiplier and base point");
        const cplx a = c.complex_value("the base point");
        c.expect(')', "closing autom()");
        return LinearFractionalMap::automorphism(lambda, a);
    }
    if (c.consume_kw("parabolic(")) {
        if (!c.consume_kw("b=")) c.fail("expected 'b=' in parabolic()");
        const double b = c.real("the translation parameter");
        cplx zeta(1.0, 0.0);
        if (c.consume(',')) {
            if (!c.consume_kw("zeta=")) c.fail("expected 'zeta=' after ','");
            zeta = c.complex_value("the fixed point");
        }
        c.expect(')', "closing parabolic()");
        return LinearFractionalMap::parabolic(b, zeta);
    }
    c.fail("expected a map spec");
}

bool looks_like_map(const std::string& raw) {
    Cursor probe{raw};
    probe.skip_ws();
    for (const char* kw : {"mobius(", "rot(", "autom(", "parabolic("})
        if (raw.compare(probe.pos, std::char_traits<char>::length(kw), kw) == 0) return true;
    return false;
}

std::string join_formatted(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

const InnerFunction& FunctionSpec::inner() const {
    if (!is_inner()) throw InvalidArgument("spec describes a map, not an inner function");
    return std::get<InnerFunction>(parsed);
}

const LinearFractionalMap& FunctionSpec::map() const {
    if (is_inner()) throw InvalidArgument("spec describes an inner function, not a map");
    return std::get<LinearFractionalMap>(parsed);
}

FunctionSpec parse_spec(const std::string& raw) {
    Cursor c{raw};
    FunctionSpec spec;
    spec.raw = raw;
    if (looks_like_map(raw))
        spec.parsed = parse_map_body(c);
    else
        spec.parsed = parse_inner_body(c);
    if (!c.eof()) c.fail("unexpected trailing characters");
    return spec;
}

InnerFunction parse_inner(const std::string& raw) { return parse_spec(raw).inner(); }

LinearFractionalMap parse_map(const std::string& raw) { return parse_spec(raw).map(); }

cplx parse_complex_literal(const std::string& raw) {
    Cursor c{raw};
    const cplx v = c.complex_value("a complex number");
    if (!c.eof()) c.fail("unexpected trailing characters");
    return v;
}

std::string format_real(double x) {
    if (x == 0.0) x = 0.0;  // collapse negative zero
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string format_complex(cplx v) {
    if (v.imag() == 0.0) return format_real(v.real());
    if (v.real() == 0.0) return format_real(v.imag()) + "i";
    std::string out = format_real(v.real());
    out += v.imag() < 0.0 ? "-" : "+";
    out += format_real(std::abs(v.imag()));
    out += "i";
    return out;
}

std::string print_spec(const InnerFunction& theta) {
    if (theta.has_sequence())
        throw InvalidArgument("sequence inner functions have no spec form");
    std::vector<std::string> parts;
    const cplx c = theta.total_constant();
    if (c != cplx(1.0, 0.0)) parts.push_back("const(" + format_complex(c) + ")");
    if (const FiniteBlaschkeProduct* fin = theta.finite_part()) {
        if (fin->m == 1) parts.push_back("z");
        if (fin->m > 1) parts.push_back("z^" + std::to_string(fin->m));
        if (!fin->zeros.empty()) {
            std::vector<std::string> pts, mults;
            bool plain = true;
            for (const BlaschkeZero& z : fin->zeros) {
                pts.push_back(format_complex(z.point));
                mults.push_back(std::to_string(z.multiplicity));
                if (z.multiplicity != 1) plain = false;
            }
            std::string piece = "blaschke(" + join_formatted(pts, ", ");
            if (!plain) piece += "; mult=" + join_formatted(mults, ",");
            piece += ")";
            parts.push_back(piece);
        }
    }
    if (theta.singular)
        for (const SingularAtom& atom : theta.singular->atoms)
            parts.push_back("atom(" + format_complex(atom.point) + ", " +
                            format_real(atom.weight) + ")");
    if (parts.empty()) return "const(1)";
    return join_formatted(parts, " * ");
}

std::string print_spec(const LinearFractionalMap& map) {
    return "mobius(" + format_complex(map.a()) + ", " + format_complex(map.b()) + ", " +
           format_complex(map.c()) + ", " + format_complex(map.d()) + ")";
}

}  // namespace cphi
