#pragma once

#include <cctype>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "diffhull/errors.hpp"
#include "diffhull/rational.hpp"

namespace diffhull {

// Exponent vector, one slot per ring variable.
using Monomial = std::vector<int>;

inline int monomial_exponent_sum(const Monomial &m)
{
    return std::accumulate(m.begin(), m.end(), 0);
}

// Variable names with grading degrees (and optional slicing weights).
struct PolyRing {
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<int> weights; // optional; empty means unweighted

    int vars() const { return static_cast<int>(names.size()); }

    int var_index(const std::string &n) const
    {
        for (int i = 0; i < vars(); ++i)
            if (names[i] == n)
                return i;
        throw ParseError("unknown variable \"" + n + "\"", n);
    }

    int monomial_degree(const Monomial &m) const
    {
        int d = 0;
        for (int i = 0; i < vars(); ++i)
            d += m[i] * degrees[i];
        return d;
    }

    int monomial_weight(const Monomial &m) const
    {
        if (weights.empty())
            return 0;
        int w = 0;
        for (int i = 0; i < vars(); ++i)
            w += m[i] * weights[i];
        return w;
    }

    std::string monomial_str(const Monomial &m) const
    {
        std::string s;
        for (int i = 0; i < vars(); ++i) {
            if (m[i] == 0)
                continue;
            if (!s.empty())
                s += "*";
            s += names[i];
            if (m[i] > 1)
                s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? "1" : s;
    }
};

// Sparse multivariate polynomial over the rationals.
class Poly {
  public:
    Poly() = default;

    static Poly zero() { return Poly(); }

    static Poly constant(const Rational &c, int nvars)
    {
        Poly p;
        if (!c.is_zero())
            p.terms_[Monomial(nvars, 0)] = c;
        return p;
    }

    static Poly monomial(Monomial m, const Rational &c = Rational(1))
    {
        Poly p;
        if (!c.is_zero())
            p.terms_[std::move(m)] = c;
        return p;
    }

    static Poly variable(int i, int nvars)
    {
        Monomial m(nvars, 0);
        m[i] = 1;
        return monomial(std::move(m));
    }

    const std::map<Monomial, Rational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial &m, const Rational &c)
    {
        if (c.is_zero())
            return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    Poly &operator+=(const Poly &o)
    {
        for (const auto &[m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    Poly &operator-=(const Poly &o)
    {
        for (const auto &[m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }

    friend Poly operator*(const Poly &a, const Poly &b)
    {
        Poly out;
        for (const auto &[m1, c1] : a.terms_)
            for (const auto &[m2, c2] : b.terms_) {
                Monomial m = m1;
                for (std::size_t i = 0; i < m.size(); ++i)
                    m[i] += m2[i];
                out.add_term(m, c1 * c2);
            }
        return out;
    }

    Poly &operator*=(const Rational &c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, v] : terms_)
            v *= c;
        return *this;
    }
    friend Poly operator*(Poly a, const Rational &c) { return a *= c; }
    friend Poly operator*(const Rational &c, Poly a) { return a *= c; }

    friend bool operator==(const Poly &a, const Poly &b)
    {
        return a.terms_ == b.terms_;
    }

    Poly derivative(int var) const
    {
        Poly out;
        for (const auto &[m, c] : terms_) {
            if (m[var] == 0)
                continue;
            Monomial d = m;
            --d[var];
            out.add_term(d, c * Rational(m[var]));
        }
        return out;
    }

    // Substitute polynomials for the variables.
    Poly substitute(const std::vector<Poly> &values, int out_vars) const
    {
        Poly out;
        for (const auto &[m, c] : terms_) {
            Poly term = Poly::constant(c, out_vars);
            for (std::size_t v = 0; v < m.size(); ++v)
                for (int t = 0; t < m[v]; ++t)
                    term = term * values[v];
            out += term;
        }
        return out;
    }

    int max_exponent_sum() const
    {
        int d = 0;
        for (const auto &[m, c] : terms_)
            d = std::max(d, monomial_exponent_sum(m));
        return d;
    }

    // Homogeneous grading degree, or nullopt-like -1 when mixed or zero.
    int homogeneous_degree(const PolyRing &ring) const
    {
        int d = -1;
        for (const auto &[m, c] : terms_) {
            int md = ring.monomial_degree(m);
            if (d == -1)
                d = md;
            else if (d != md)
                return -2;
        }
        return d;
    }

    std::string str(const PolyRing &ring) const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto &[m, c] : terms_) {
            if (!s.empty())
                s += " + ";
            if (c.is_one() && monomial_exponent_sum(m) > 0)
                s += ring.monomial_str(m);
            else if (monomial_exponent_sum(m) == 0)
                s += c.str();
            else
                s += c.str() + "*" + ring.monomial_str(m);
        }
        return s;
    }

  private:
    std::map<Monomial, Rational> terms_;
};

// --- polynomial string parser -------------------------------------------------
//
// Grammar: expr := ['-'] term (('+'|'-') term)*
//          term := factor ('*' factor)*
//          factor := rational | var ('^' int)? | '(' expr ')'

namespace detail {

class PolyParser {
  public:
    PolyParser(const PolyRing &ring, const std::string &src)
        : ring_(ring), src_(src)
    {}

    Poly parse()
    {
        Poly p = expr();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError("trailing input in polynomial \"" + src_ + "\"",
                             src_.substr(pos_));
        return p;
    }

  private:
    Poly expr()
    {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        } else if (peek() == '+') {
            ++pos_;
        }
        Poly p = term();
        if (neg)
            p *= Rational(-1);
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                p += term();
            } else if (c == '-') {
                ++pos_;
                p -= term();
            } else {
                break;
            }
        }
        return p;
    }

    Poly term()
    {
        Poly p = factor();
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                p = p * factor();
            } else if (std::isalpha(static_cast<unsigned char>(c)) ||
                       c == '(') {
                p = p * factor(); // implicit product, e.g. "2x" or "x y"
            } else {
                break;
            }
        }
        return p;
    }

    Poly factor()
    {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            skip_ws();
            if (peek() != ')')
                throw ParseError("missing ')' in polynomial", src_);
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_while([](char ch) {
                return std::isdigit(static_cast<unsigned char>(ch)) != 0;
            });
            std::string lit = num;
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                std::string den = read_while([](char ch) {
                    return std::isdigit(static_cast<unsigned char>(ch)) != 0;
                });
                if (den.empty())
                    throw ParseError("missing denominator", src_);
                lit += "/" + den;
            }
            return Poly::constant(Rational::parse(lit), ring_.vars());
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = read_while([](char ch) {
                return std::isalnum(static_cast<unsigned char>(ch)) != 0 ||
                       ch == '_';
            });
            int v = ring_.var_index(name);
            int e = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                std::string num = read_while([](char ch) {
                    return std::isdigit(static_cast<unsigned char>(ch)) != 0;
                });
                if (num.empty())
                    throw ParseError("missing exponent", src_);
                e = std::stoi(num);
            }
            Monomial m(ring_.vars(), 0);
            m[v] = e;
            return Poly::monomial(std::move(m));
        }
        throw ParseError("unexpected character in polynomial \"" + src_ +
                             "\"",
                         std::string(1, c));
    }

    template <class Pred>
    std::string read_while(Pred pred)
    {
        std::string out;
        while (pos_ < src_.size() && pred(src_[pos_]))
            out.push_back(src_[pos_++]);
        return out;
    }

    void skip_ws()
    {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    const PolyRing &ring_;
    const std::string &src_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Poly parse_poly(const PolyRing &ring, const std::string &src)
{
    return detail::PolyParser(ring, src).parse();
}

} // namespace diffhull
