#include "qcalc/certify.hpp"

#include <algorithm>
#include <thread>

namespace qcalc {

template <class S>
Mat<S> build_constraint_system(const Calculus<S>& c)
{
    Mat<S> l = lift23(c.br.sigma);
    S q2 = c.data.q * c.data.q;
    Mat<S> m(64, 40);
    for (std::size_t a = 0; a < 10; ++a)
        for (std::size_t n = 0; n < 4; ++n) {
            Vec<S> v(64, S(0));
            for (std::size_t x = 0; x < 4; ++x)
                for (std::size_t y = 0; y < 4; ++y) v[triple_index(x, y, n)] = c.nu(pair_index(x, y), a);
            Vec<S> w = l * v;
            for (std::size_t i = 0; i < 64; ++i)
                if (!is_zero(v[i])) w[i] += q2 * v[i];
            Vec<S> z = l * w;
            for (std::size_t i = 0; i < 64; ++i) {
                if (!is_zero(z[i])) z[i] *= q2;
                z[i] += w[i];
            }
            m.set_column(4 * a + n, z);
        }
    m.row_labels = triple_labels();
    for (int a = 1; a <= 10; ++a)
        for (int n = 1; n <= 4; ++n) m.col_labels.push_back("A[" + std::to_string(a) + "," + std::to_string(n) + "]");
    return m;
}

template <class S>
bool constraint_identity_holds(const Calculus<S>& c, const Mat<S>& m, const Mat<S>& psym23)
{
    S r = S(1) + c.data.q * c.data.q;
    S f = r * r;
    for (std::size_t col = 0; col < 40; ++col) {
        Vec<S> e = embed_w_nu(c, psym23.column(col));
        for (std::size_t i = 0; i < 64; ++i)
            if (m(i, col) != (is_zero(e[i]) ? S(0) : f * e[i])) return false;
    }
    return true;
}

template Mat<FieldElem> build_constraint_system(const Calculus<FieldElem>&);
template Mat<Rat> build_constraint_system(const Calculus<Rat>&);
template bool constraint_identity_holds(const Calculus<FieldElem>&, const Mat<FieldElem>&, const Mat<FieldElem>&);
template bool constraint_identity_holds(const Calculus<Rat>&, const Mat<Rat>&, const Mat<Rat>&);

std::string rat_str(const Rat& x) { return x.get_str(); }

LinForm generated_row(const Mat<FieldElem>& m, const Triple& row)
{
    LinForm f;
    std::size_t r = triple_index(row[0] - 1, row[1] - 1, row[2] - 1);
    for (int a = 1; a <= 10; ++a)
        for (int n = 1; n <= 4; ++n) {
            const FieldElem& x = m(r, unknown_column({a, n}));
            if (!x.is_zero()) f.coeff[{a, n}] = x;
        }
    return f;
}

namespace {

// c * k^b with c rational
std::optional<std::pair<Rat, int>> rational_times_k_power(const FieldElem& x)
{
    if (!x.num_b().is_zero() || !x.num_a().is_monomial() || !x.den().is_monomial()) return std::nullopt;
    Exp en = x.num_a().lexp(), ed = x.den().lexp();
    if (en[Var::q] || en[Var::t] || ed[Var::q] || ed[Var::t]) return std::nullopt;
    Rat c(x.num_a().lc(), x.den().lc());
    c.canonicalize();
    return std::make_pair(c, int(en[Var::k]) - int(ed[Var::k]));
}

std::vector<int> by_magnitude(int n)
{
    std::vector<int> out{0};
    for (int i = 1; i <= n; ++i) {
        out.push_back(i);
        out.push_back(-i);
    }
    return out;
}

}  // namespace

std::optional<UnitFactor> unit_factor(const FieldElem& value, const FieldElem& stated, const FieldElem& t_binding)
{
    if (value.is_zero() || stated.is_zero()) return std::nullopt;
    FieldElem ratio = value / stated;
    for (int e : by_magnitude(8)) {
        FieldElem y = ratio / FieldElem::s().pow(e);
        for (int a : by_magnitude(24)) {
            FieldElem z = a == 0 ? y : y / t_binding.pow(a);
            if (auto ck = rational_times_k_power(z)) {
                UnitFactor u;
                u.unit = ratio;
                u.c = ck->first;
                u.k_exp = ck->second;
                u.t_exp = a;
                u.s_exp = e;
                return u;
            }
        }
    }
    return std::nullopt;
}

std::vector<SubsystemResult> subsystem_determinants(const Mat<FieldElem>& m,
                                                    const std::vector<PrintedSubsystem>& subs,
                                                    const FieldElem& t_binding)
{
    std::vector<SubsystemResult> out;
    for (auto& s : subs) {
        if (s.rows.size() != s.unknowns.size())
            throw DataValidationError("subsystem " + s.label + " is not square");
        std::vector<std::size_t> rs, cs;
        for (auto& r : s.rows) rs.push_back(triple_index(r[0] - 1, r[1] - 1, r[2] - 1));
        for (auto& u : s.unknowns) cs.push_back(unknown_column(u));
        SubsystemResult res;
        res.label = s.label;
        res.value = det(m.submatrix(rs, cs));
        res.paper_value = s.paper_value;
        res.exact = s.exact;
        if (s.printed.size() == s.unknowns.size()) res.printed_det = det(printed_matrix(s));
        if (s.paper_value) {
            res.unit = unit_factor(res.value, *s.paper_value, t_binding);
            if (res.unit)
                res.match = !s.exact || res.unit->unit == FieldElem(1) || res.unit->unit == FieldElem(-1);
        }
        out.push_back(std::move(res));
    }
    return out;
}

std::vector<LemmaDiff> regenerate_lemmas(const Mat<FieldElem>& m, const std::vector<PrintedRow>& rows)
{
    std::vector<LemmaDiff> out;
    for (auto& row : rows) {
        LemmaDiff d;
        d.row = row.row;
        d.printed = row.text;
        d.note = row.note;
        LinForm g = generated_row(m, row.row);
        d.generated = g.str();
        const LinForm& p = row.lhs;
        bool same_keys = g.coeff.size() == p.coeff.size() && p.c.is_zero();
        for (auto& [u, x] : p.coeff)
            if (!g.coeff.count(u)) same_keys = false;
        if (!same_keys || g.coeff.empty()) {
            d.status = same_keys ? "equal" : "mismatch";
            if (same_keys) d.factor = FieldElem(1);
            out.push_back(std::move(d));
            continue;
        }
        FieldElem lambda = g.coeff.begin()->second / p.coeff.at(g.coeff.begin()->first);
        bool prop = true;
        for (auto& [u, x] : g.coeff)
            if (x != lambda * p.coeff.at(u)) prop = false;
        if (!prop) d.status = "mismatch";
        else {
            d.status = lambda.is_one() ? "equal" : "proportional";
            d.factor = lambda;
        }
        out.push_back(std::move(d));
    }
    return out;
}

namespace {

UPoly specialize(const Poly& p, const Rat& t0, const Rat& k0)
{
    std::vector<Rat> cs(p.is_zero() ? 0 : p.deg(Var::q) + 1, Rat(0));
    for (auto& term : p.terms()) {
        Rat c(term.c);
        for (unsigned i = 0; i < term.e[Var::t]; ++i) c *= t0;
        for (unsigned i = 0; i < term.e[Var::k]; ++i) c *= k0;
        cs[term.e[Var::q]] += c;
    }
    return UPoly(std::move(cs));
}

UPoly exact_quotient(const UPoly& a, const UPoly& b)
{
    UPoly q, r;
    divmod(a, b, q, r);
    if (!r.is_zero()) throw std::logic_error("inexact univariate division");
    return q;
}

// Entry A + B*s after clearing row denominators.
struct SpecializedMatrix {
    std::size_t n = 0;
    std::vector<UPoly> a, b;
    UPoly scale{{Rat(1)}};
    int degree_bound = 0;
    bool zero_row = false;

    Rat det_at(const Rat& q, const Rat& s) const
    {
        Mat<Rat> m(n, n);
        for (std::size_t i = 0; i < n * n; ++i) {
            Rat v = a[i](q);
            if (!b[i].is_zero()) v += b[i](q) * s;
            m.a[i] = v;
        }
        return det(m);
    }
};

SpecializedMatrix specialize(const Mat<FieldElem>& m, const Rat& t0, const Rat& k0)
{
    SpecializedMatrix sm;
    sm.n = m.rows;
    sm.a.resize(m.a.size());
    sm.b.resize(m.a.size());
    for (std::size_t i = 0; i < m.rows; ++i) {
        UPoly l({Rat(1)});
        std::vector<UPoly> dens(m.cols);
        for (std::size_t j = 0; j < m.cols; ++j) {
            const FieldElem& x = m(i, j);
            if (x.is_zero()) continue;
            dens[j] = specialize(x.den(), t0, k0);
            if (dens[j].is_zero())
                throw EvalDenominatorZero("denominator vanishes at the specialization in row " + std::to_string(i + 1));
            l = exact_quotient(l * dens[j], gcd(l, dens[j]));
        }
        int row_deg = -1;
        for (std::size_t j = 0; j < m.cols; ++j) {
            const FieldElem& x = m(i, j);
            if (x.is_zero()) continue;
            UPoly f = exact_quotient(l, dens[j]);
            auto& a = sm.a[i * m.cols + j];
            auto& b = sm.b[i * m.cols + j];
            a = specialize(x.num_a(), t0, k0) * f;
            b = specialize(x.num_b(), t0, k0) * f;
            if (!a.is_zero()) row_deg = std::max(row_deg, a.degree());
            if (!b.is_zero()) row_deg = std::max(row_deg, b.degree() + 1);
        }
        if (row_deg < 0) sm.zero_row = true;
        else sm.degree_bound += row_deg;
        sm.scale = sm.scale * l;
    }
    return sm;
}

UPoly strip_root(UPoly p, const Rat& x)
{
    while (p.degree() >= 1 && sgn(p(x)) == 0) p = exact_quotient(p, UPoly({-x, Rat(1)}));
    return p;
}

bool on_positive_branch(const UPoly& a, const UPoly& b, const RootInterval& iv)
{
    if (b.is_zero()) return true;
    int al = sgn(a(iv.lo)), ah = sgn(a(iv.hi)), bl = sgn(b(iv.lo)), bh = sgn(b(iv.hi));
    if (al == 0 || ah == 0 || bl == 0 || bh == 0 || al != ah || bl != bh) return true;
    return al == -bl;
}

}  // namespace

ExceptionalResult exceptional_q(const Mat<FieldElem>& psym23, const std::optional<FieldElem>& symbolic_det,
                                const Rat& t0, const Rat& k0, const Rat& width)
{
    ExceptionalResult res;
    res.t0 = t0;
    res.k0 = k0;
    SpecializedMatrix sm = specialize(psym23, t0, k0);
    res.degree_bound = sm.degree_bound;
    if (sm.zero_row) {
        res.identically_zero = true;
        return res;
    }
    const std::size_t npts = std::size_t(sm.degree_bound) + 1;
    std::vector<Rat> xs(npts), as(npts), bs(npts);
    auto work = [&](std::size_t first, std::size_t step) {
        for (std::size_t i = first; i < npts; i += step) {
            Point p = Point::pythagorean(Rat(long(i) + 2), t0, k0);
            Rat plus = sm.det_at(p.q, p.s), minus = sm.det_at(p.q, -p.s);
            xs[i] = p.q;
            as[i] = (plus + minus) / 2;
            bs[i] = (plus - minus) / (2 * p.s);
        }
    };
    std::size_t nthreads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < nthreads; ++w) pool.emplace_back(work, w, nthreads);
    work(0, nthreads);
    for (auto& th : pool) th.join();
    int u = int(npts) + 2;
    res.points = int(npts);
    UPoly a = interpolate(xs, as), b = interpolate(xs, bs);

    int checked = 0;
    for (int v = u; checked < 3 && v < u + 50; ++v) {
        Rat uu(2 * v + 1, 2);
        Point p = Point::pythagorean(uu, t0, k0);
        for (const Rat& s : {p.s, Rat(-p.s)}) {
            Rat interp = a(p.q) + b(p.q) * s;
            if (interp != sm.det_at(p.q, s))
                throw InterpolationInconsistent("interpolated determinant disagrees with direct evaluation at u = " +
                                                rat_str(uu));
            if (symbolic_det) {
                Rat sym;
                try {
                    sym = symbolic_det->eval(Point{p.q, s, t0, k0}) * sm.scale(p.q);
                } catch (const EvalDenominatorZero&) {
                    continue;
                }
                if (sym != interp)
                    throw InterpolationInconsistent("interpolated and symbolic determinants disagree at u = " +
                                                    rat_str(uu));
            }
        }
        ++checked;
    }

    UPoly one_plus_q2({Rat(1), Rat(0), Rat(1)});
    UPoly norm = a * a - b * b * one_plus_q2;
    if (norm.is_zero()) {
        res.identically_zero = true;
        return res;
    }
    UPoly sq = squarefree(norm);
    for (UPoly g = gcd(sq, sm.scale); g.degree() >= 1; g = gcd(sq, sm.scale)) sq = exact_quotient(sq, g).primitive();
    for (const Rat& x : {Rat(0), Rat(1), Rat(-1)}) sq = strip_root(sq, x);
    res.numerator = sq.primitive();
    auto chain = sturm_chain(res.numerator);
    for (auto [lo, hi] : {std::pair{Rat(-1), Rat(0)}, std::pair{Rat(0), Rat(1)}})
        for (auto& iv : isolate_roots(res.numerator, lo, hi, width)) {
            if (!on_positive_branch(a, b, iv)) continue;
            if (sturm_count(chain, iv.lo, iv.hi) != 1) res.certified = false;
            res.roots.push_back(iv);
        }
    return res;
}

bool same_roots(const ExceptionalResult& x, const ExceptionalResult& y)
{
    if (x.identically_zero || y.identically_zero) return x.identically_zero == y.identically_zero;
    if (x.roots.size() != y.roots.size()) return false;
    if (x.roots.empty()) return true;
    UPoly g = gcd(x.numerator, y.numerator);
    if (g.degree() < 1) return false;
    auto chain = sturm_chain(g);
    for (auto* r : {&x, &y})
        for (auto& iv : r->roots)
            if (sturm_count(chain, iv.lo, iv.hi) != 1) return false;
    return true;
}

bool Certificate::pass() const
{
    for (auto& p : properties)
        if (!p.pass) return false;
    return true;
}

Certificate certify(const Calculus<FieldElem>& c, const PrintedFormulas& p, const FieldElem& t_binding,
                    const CertifyOptions& opt)
{
    Certificate cert;
    cert.opt = opt;
    cert.t_binding = t_binding;
    cert.constraint = build_constraint_system(c);
    cert.psym23 = psym23_matrix(c);
    cert.psym23_det = det(cert.psym23);
    auto prop = [&](std::string name, bool ok) { cert.properties.push_back({std::move(name), ok}); };
    prop("constraint_system_equals_scaled_psym23", constraint_identity_holds(c, cert.constraint, cert.psym23));
    prop("constraint_kernel_trivial", rank(cert.constraint) == 40);
    prop("psym23_det_nonzero", !cert.psym23_det.is_zero());

    cert.subsystems = subsystem_determinants(cert.constraint, p.subsystems, t_binding);
    for (auto& s : cert.subsystems)
        if (s.paper_value) prop("subsystem " + s.label + " matches", s.match);
    cert.lemmas = regenerate_lemmas(cert.constraint, p.lemma_rows);

    cert.primary = exceptional_q(cert.psym23, cert.psym23_det, opt.t0, opt.k0);
    Rat t1 = 5, k1 = 7;
    if (opt.t0 == t1 && opt.k0 == k1) {
        t1 = 2;
        k1 = 3;
    }
    cert.secondary = exceptional_q(cert.psym23, cert.psym23_det, t1, k1);
    prop("exceptional_set_finite", !cert.primary.identically_zero && !cert.secondary.identically_zero);
    prop("root_intervals_certified", cert.primary.certified && cert.secondary.certified);
    prop("exceptional_roots_independent_of_t_k", same_roots(cert.primary, cert.secondary));
    return cert;
}

namespace {

nlohmann::ordered_json exceptional_json(const ExceptionalResult& r)
{
    nlohmann::ordered_json j;
    j["t"] = rat_str(r.t0);
    j["k"] = rat_str(r.k0);
    j["identically_zero"] = r.identically_zero;
    j["degree_bound"] = r.degree_bound;
    j["interpolation_points"] = r.points;
    j["numerator"] = r.numerator.str();
    j["roots"] = nlohmann::ordered_json::array();
    for (auto& iv : r.roots) j["roots"].push_back({{"interval_lo", rat_str(iv.lo)}, {"interval_hi", rat_str(iv.hi)}});
    return j;
}

nlohmann::ordered_json optional_str(const std::optional<FieldElem>& x)
{
    return x ? nlohmann::ordered_json(x->str()) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json to_json(const Certificate& cert)
{
    nlohmann::ordered_json j;
    j["variant"] = cert.opt.variant;
    j["sign"] = sign_name(cert.opt.sign);
    j["t_binding"] = cert.t_binding.str();
    j["specialization"] = {{"t", rat_str(cert.opt.t0)}, {"k", rat_str(cert.opt.k0)}};

    auto& dets = j["determinants"] = nlohmann::ordered_json::array();
    dets.push_back({{"label", "psym23"},
                    {"value", cert.psym23_det.str()},
                    {"paper_value", nullptr},
                    {"unit_factor", nullptr}});
    for (auto& s : cert.subsystems) {
        nlohmann::ordered_json e;
        e["label"] = s.label;
        e["value"] = s.value.str();
        e["paper_value"] = optional_str(s.paper_value);
        e["unit_factor"] = s.unit ? nlohmann::ordered_json(s.unit->unit.str()) : nlohmann::ordered_json(nullptr);
        e["printed_det"] = optional_str(s.printed_det);
        e["match"] = s.match;
        dets.push_back(std::move(e));
    }

    auto& roots = j["exceptional_roots"] = nlohmann::ordered_json::array();
    for (auto& iv : cert.primary.roots)
        roots.push_back({{"poly_factor", cert.primary.numerator.str()},
                         {"interval_lo", rat_str(iv.lo)},
                         {"interval_hi", rat_str(iv.hi)}});
    j["exceptional_certificate"] = {{"specializations", {exceptional_json(cert.primary), exceptional_json(cert.secondary)}},
                                    {"t_k_dependent", !same_roots(cert.primary, cert.secondary)}};

    auto& lem = j["lemma_diff"] = nlohmann::ordered_json::array();
    for (auto& d : cert.lemmas) {
        nlohmann::ordered_json e;
        e["row"] = triple_label(d.row);
        e["status"] = d.status;
        e["factor"] = optional_str(d.factor);
        e["generated"] = d.generated;
        e["printed"] = d.printed;
        if (!d.note.empty()) e["note"] = d.note;
        lem.push_back(std::move(e));
    }

    auto& props = j["properties"] = nlohmann::ordered_json::array();
    for (auto& p : cert.properties) props.push_back({{"name", p.name}, {"pass", p.pass}});
    return j;
}

}  // namespace qcalc
