#include "jlq/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace jlq {

Monomial::Monomial(std::vector<Factor> factors) : f_(std::move(factors)) {
    std::sort(f_.begin(), f_.end());
    std::vector<Factor> merged;
    for (auto& [v, e] : f_) {
        if (!merged.empty() && merged.back().first == v)
            merged.back().second += e;
        else
            merged.emplace_back(v, e);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Factor& f) { return f.second == 0; }),
                 merged.end());
    f_ = std::move(merged);
}

Monomial Monomial::of(Var v, int e) {
    Monomial m;
    if (e != 0) m.f_.emplace_back(v, e);
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (auto& f : f_) d += f.second;
    return d;
}

int Monomial::exponent(Var v) const {
    for (auto& f : f_)
        if (f.first == v) return f.second;
    return 0;
}

bool Monomial::has_negative() const {
    for (auto& f : f_)
        if (f.second < 0) return true;
    return false;
}

namespace {
template <class Op>
Monomial combine(const std::vector<Monomial::Factor>& a, const std::vector<Monomial::Factor>& b, Op op) {
    std::vector<Monomial::Factor> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.emplace_back(b[j].first, op(0, b[j].second));
            ++j;
        } else {
            int e = op(a[i].second, b[j].second);
            if (e != 0) r.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return Monomial(std::move(r));
}
}  // namespace

Monomial Monomial::operator*(const Monomial& o) const {
    if (f_.empty()) return o;
    if (o.f_.empty()) return *this;
    return combine(f_, o.f_, [](int x, int y) { return x + y; });
}

Monomial Monomial::operator/(const Monomial& o) const {
    if (o.f_.empty()) return *this;
    return combine(f_, o.f_, [](int x, int y) { return x - y; });
}

bool Monomial::divides(const Monomial& o) const {
    for (auto& [v, e] : f_)
        if (o.exponent(v) < e) return false;
    return true;
}

Monomial Monomial::without(Var v) const {
    Monomial m;
    for (auto& f : f_)
        if (f.first != v) m.f_.push_back(f);
    return m;
}

Monomial Monomial::pow(int n) const {
    if (n == 0) return {};
    Monomial m;
    m.f_ = f_;
    for (auto& f : m.f_) f.second *= n;
    return m;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto& [v, e] : f_) {
        h = (h ^ v) * 1099511628211ULL;
        h = (h ^ static_cast<std::size_t>(e + 1000)) * 1099511628211ULL;
    }
    return h;
}

namespace {
std::vector<Monomial::Factor> by_rank(const Monomial& m) {
    auto f = m.factors();
    std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return rank_compare(a.first, b.first) < 0; });
    return f;
}

// Lexicographic comparison of sparse exponent vectors whose entries are sorted
// from most to least significant variable under `less`.
template <class Less>
int lex_compare(const std::vector<Monomial::Factor>& a, const std::vector<Monomial::Factor>& b, Less less) {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && less(a[i].first, b[j].first)))
            return a[i].second > 0 ? 1 : -1;
        if (i == a.size() || less(b[j].first, a[i].first))
            return b[j].second > 0 ? -1 : 1;
        if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
        ++i;
        ++j;
    }
    return 0;
}
}  // namespace

int storage_compare(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    return lex_compare(a.factors(), b.factors(), [](Var x, Var y) { return x < y; });
}

int rank_order_compare(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    return lex_compare(by_rank(a), by_rank(b), [](Var x, Var y) { return rank_compare(x, y) < 0; });
}

std::string Monomial::str() const {
    std::string s;
    for (auto& [v, e] : by_rank(*this)) {
        if (!s.empty()) s += "*";
        s += sym_name(v);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const GQ& c) {
    if (!c.is_zero()) t_.push_back({Monomial(), c});
}

Poly Poly::variable(Var v, int e) { return monomial(Monomial::of(v, e)); }

Poly Poly::monomial(const Monomial& m, const GQ& c) {
    Poly p;
    if (!c.is_zero()) p.t_.push_back({m, c});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::unordered_map<Monomial, GQ, MonomialHash> acc;
    std::vector<Monomial> order;
    for (auto& t : terms) {
        auto it = acc.find(t.m);
        if (it == acc.end()) {
            acc.emplace(t.m, t.c);
        } else {
            it->second += t.c;
        }
    }
    Poly p;
    p.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) p.t_.push_back({m, c});
    std::sort(p.t_.begin(), p.t_.end(), [](const Term& a, const Term& b) { return storage_compare(a.m, b.m) > 0; });
    return p;
}

GQ Poly::constant_value() const {
    if (t_.empty()) return GQ(0);
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return t_[0].c;
}

GQ Poly::constant_term() const {
    if (!t_.empty() && t_.back().m.is_one()) return t_.back().c;
    for (auto& t : t_)
        if (t.m.is_one()) return t.c;
    return GQ(0);
}

int Poly::degree(Var v) const {
    int d = 0;
    bool first = true;
    for (auto& t : t_) {
        int e = t.m.exponent(v);
        if (first || e > d) d = e;
        first = false;
    }
    return d;
}

int Poly::min_degree(Var v) const {
    int d = 0;
    bool first = true;
    for (auto& t : t_) {
        int e = t.m.exponent(v);
        if (first || e < d) d = e;
        first = false;
    }
    return d;
}

int Poly::total_degree() const { return t_.empty() ? 0 : t_.front().m.degree(); }

bool Poly::has_var(Var v) const {
    for (auto& t : t_)
        for (auto& f : t.m.factors())
            if (f.first == v) return true;
    return false;
}

std::vector<Var> Poly::variables() const {
    std::vector<Var> vs;
    for (auto& t : t_)
        for (auto& f : t.m.factors()) vs.push_back(f.first);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

Monomial Poly::min_monomial() const {
    if (t_.empty()) return {};
    std::vector<Monomial::Factor> f;
    for (Var v : variables()) f.emplace_back(v, min_degree(v));
    return Monomial(std::move(f));
}

bool Poly::has_negative_exponent() const {
    for (auto& t : t_)
        if (t.m.has_negative()) return true;
    return false;
}

const Term& Poly::rank_lead() const {
    if (t_.empty()) throw std::logic_error("leading term of zero polynomial");
    std::size_t best = 0;
    for (std::size_t k = 1; k < t_.size(); ++k)
        if (rank_order_compare(t_[k].m, t_[best].m) > 0) best = k;
    return t_[best];
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& t : p.t_) t.c = -t.c;
    return p;
}

namespace {
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size())
            c = -1;
        else if (j == b.size())
            c = 1;
        else
            c = storage_compare(a[i].m, b[j].m);
        if (c > 0) {
            r.push_back(a[i++]);
        } else if (c < 0) {
            r.push_back(b[j++]);
            if (subtract) r.back().c = -r.back().c;
        } else {
            GQ s = subtract ? a[i].c - b[j].c : a[i].c + b[j].c;
            if (!s.is_zero()) r.push_back({a[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    return r;
}
}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    if (o.t_.empty()) return *this;
    if (t_.empty()) return *this = o;
    t_ = merge_terms(t_, o.t_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.t_.empty()) return *this;
    t_ = merge_terms(t_, o.t_, true);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.t_.empty() || b.t_.empty()) return Poly();
    if (a.t_.size() == 1) return b.shifted(a.t_[0].m).scaled(a.t_[0].c);
    if (b.t_.size() == 1) return a.shifted(b.t_[0].m).scaled(b.t_[0].c);
    std::unordered_map<Monomial, GQ, MonomialHash> acc;
    acc.reserve(a.t_.size() * b.t_.size());
    for (auto& x : a.t_)
        for (auto& y : b.t_) {
            Monomial m = x.m * y.m;
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), x.c * y.c);
            else
                it->second += x.c * y.c;
        }
    Poly p;
    p.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) p.t_.push_back({m, c});
    std::sort(p.t_.begin(), p.t_.end(), [](const Term& x, const Term& y) { return storage_compare(x.m, y.m) > 0; });
    return p;
}

Poly Poly::scaled(const GQ& c) const {
    if (c.is_zero()) return Poly();
    if (c.is_one()) return *this;
    Poly p = *this;
    for (auto& t : p.t_) t.c *= c;
    return p;
}

Poly Poly::shifted(const Monomial& m) const {
    if (m.is_one()) return *this;
    Poly p = *this;
    for (auto& t : p.t_) t.m = t.m * m;
    return p;
}

Poly Poly::pow(unsigned n) const {
    Poly r(1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Poly Poly::monic() const {
    if (t_.empty()) return *this;
    const GQ& c = rank_lead().c;
    if (c.is_one()) return *this;
    return scaled(c.inverse());
}

Poly Poly::diff(Var v) const {
    std::vector<Term> r;
    for (auto& t : t_) {
        int e = t.m.exponent(v);
        if (e == 0) continue;
        r.push_back({t.m * Monomial::of(v, -1), t.c * GQ(e)});
    }
    // differentiation by a single variable preserves the relative order of surviving terms
    Poly p;
    p.t_ = std::move(r);
    std::sort(p.t_.begin(), p.t_.end(), [](const Term& x, const Term& y) { return storage_compare(x.m, y.m) > 0; });
    return p;
}

std::map<int, Poly> Poly::coefficients_in(Var v) const {
    std::map<int, std::vector<Term>> buckets;
    for (auto& t : t_) {
        int e = t.m.exponent(v);
        buckets[e].push_back({t.m.without(v), t.c});
    }
    std::map<int, Poly> out;
    for (auto& [e, ts] : buckets) {
        Poly p;
        p.t_ = std::move(ts);
        // removing one variable keeps terms distinct but may reorder them
        std::sort(p.t_.begin(), p.t_.end(), [](const Term& x, const Term& y) { return storage_compare(x.m, y.m) > 0; });
        out.emplace(e, std::move(p));
    }
    return out;
}

std::unordered_map<Monomial, Poly, MonomialHash> Poly::coefficients_in(const std::vector<Var>& vs) const {
    std::unordered_map<Monomial, std::vector<Term>, MonomialHash> buckets;
    for (auto& t : t_) {
        std::vector<Monomial::Factor> in, out;
        for (auto& f : t.m.factors()) {
            if (std::find(vs.begin(), vs.end(), f.first) != vs.end())
                in.push_back(f);
            else
                out.push_back(f);
        }
        buckets[Monomial(std::move(in))].push_back({Monomial(std::move(out)), t.c});
    }
    std::unordered_map<Monomial, Poly, MonomialHash> res;
    for (auto& [m, ts] : buckets) {
        Poly p;
        p.t_ = std::move(ts);
        std::sort(p.t_.begin(), p.t_.end(), [](const Term& x, const Term& y) { return storage_compare(x.m, y.m) > 0; });
        res.emplace(m, std::move(p));
    }
    return res;
}

Poly Poly::substitute(Var v, const Poly& p) const {
    auto cs = coefficients_in(v);
    if (cs.size() == 1 && cs.begin()->first == 0) return *this;
    if (cs.begin()->first < 0) throw std::domain_error("substitution into negative power of " + sym_name(v));
    Poly r;
    int prev = cs.rbegin()->first;
    // Horner over the sparse exponent list
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        if (it != cs.rbegin()) r = r * p.pow(static_cast<unsigned>(prev - it->first));
        r += it->second;
        prev = it->first;
    }
    if (prev > 0) r = r * p.pow(static_cast<unsigned>(prev));
    return r;
}

GQ Poly::evaluate(const std::function<GQ(Var)>& value) const {
    std::unordered_map<Var, GQ> cache;
    GQ sum(0);
    for (auto& t : t_) {
        GQ term = t.c;
        for (auto& [v, e] : t.m.factors()) {
            auto it = cache.find(v);
            if (it == cache.end()) it = cache.emplace(v, value(v)).first;
            term *= it->second.pow(e);
        }
        sum += term;
    }
    return sum;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t k = 0; k < a.t_.size(); ++k)
        if (a.t_[k].m != b.t_[k].m || a.t_[k].c != b.t_[k].c) return false;
    return true;
}

std::size_t Poly::hash() const {
    std::size_t h = t_.size();
    for (auto& t : t_) h = h * 1000003 ^ (t.m.hash() * 31 + t.c.hash());
    return h;
}

namespace {
bool is_negative_coeff(const GQ& c) { return c.is_compound() ? false : c.sign() < 0; }
}  // namespace

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::vector<const Term*> ts;
    for (auto& t : t_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](const Term* a, const Term* b) { return rank_order_compare(a->m, b->m) > 0; });
    std::string s;
    bool first = true;
    for (auto* t : ts) {
        GQ c = t->c;
        bool neg = is_negative_coeff(c);
        if (neg) c = -c;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        if (t->m.is_one()) {
            s += c.str();
        } else if (c.is_one()) {
            s += t->m.str();
        } else {
            s += c.str() + "*" + t->m.str();
        }
    }
    return s;
}

// ---------------------------------------------------------------- division, sqrt

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(b.constant_value().inverse());
    if (b.is_monomial()) {
        const Term& bt = b.lead();
        for (auto& t : a.terms())
            if (!bt.m.divides(t.m)) return std::nullopt;
        return a.shifted(Monomial() / bt.m).scaled(bt.c.inverse());
    }
    const Term& bl = b.lead();
    if (!bl.m.divides(a.lead().m)) return std::nullopt;
    GQ binv = bl.c.inverse();
    std::vector<Term> q;
    Poly r = a;
    std::size_t guard = 0;
    while (!r.is_zero()) {
        const Term& rl = r.lead();
        if (!bl.m.divides(rl.m)) return std::nullopt;
        Term qt{rl.m / bl.m, rl.c * binv};
        r -= b.shifted(qt.m).scaled(qt.c);
        q.push_back(std::move(qt));
        if (++guard > 1000000) throw std::runtime_error("polynomial division did not terminate");
    }
    // quotient terms arrive in descending storage order
    return Poly::from_terms(std::move(q));
}

Poly squarefree_part(const Poly& p) {
    if (p.is_constant()) return p.is_zero() ? Poly() : Poly(1);
    Poly g = p;
    for (Var v : p.variables()) {
        if (g.is_constant()) break;
        g = gcd(g, p.diff(v));
    }
    auto q = divide_exact(p, g);
    if (!q) throw std::logic_error("squarefree part: gcd does not divide");
    return q->monic();
}

std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return Poly();
    const Term& lt = p.lead();
    for (auto& f : lt.m.factors())
        if (f.second % 2 != 0) return std::nullopt;
    auto c = lt.c.sqrt();
    if (!c) return std::nullopt;
    std::vector<Monomial::Factor> half;
    for (auto& f : lt.m.factors()) half.emplace_back(f.first, f.second / 2);
    Term root{Monomial(std::move(half)), *c};
    Poly r = Poly::monomial(root.m, root.c);
    GQ two_c = root.c * GQ(2);
    for (std::size_t iter = 0; iter <= p.size() + 1; ++iter) {
        Poly rem = p - r * r;
        if (rem.is_zero()) return r;
        const Term& rl = rem.lead();
        if (!root.m.divides(rl.m)) return std::nullopt;
        Monomial m = rl.m / root.m;
        if (storage_compare(m, root.m) >= 0) return std::nullopt;
        r += Poly::monomial(m, rl.c / two_c);
    }
    return std::nullopt;
}

}  // namespace jlq
