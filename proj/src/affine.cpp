#include "barycentra/affine.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace barycentra {

// ------------------------------------------------------------ vector space

FiniteVectorSpace::FiniteVectorSpace(std::int64_t modulus, std::size_t dimension)
    : p_(modulus), n_(dimension), size_(1) {
    if (!is_prime(modulus)) throw DomainError("modulus " + std::to_string(modulus) + " is not prime");
    if (modulus == 2) throw DomainError("GF(2) is not supported; use an odd prime");
    if (dimension == 0) throw DomainError("dimension must be at least 1");
    for (std::size_t i = 0; i < n_; ++i) {
        if (size_ > kMaxSpaceSize) break;
        size_ *= static_cast<std::size_t>(p_);
    }
    if (size_ > kMaxSpaceSize)
        throw Error("GF(" + std::to_string(p_) + ")^" + std::to_string(n_) + " exceeds the size bound " +
                    std::to_string(kMaxSpaceSize));
}

FiniteVectorSpace FiniteVectorSpace::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("space description must be an object");
    auto field = [&](const char* a, const char* b) -> const nlohmann::json& {
        if (j.contains(a)) return j.at(a);
        if (j.contains(b)) return j.at(b);
        throw ParseError(std::string("space description needs \"") + a + "\"");
    };
    const auto& p = field("modulus", "p");
    const auto& n = field("dimension", "n");
    if (!p.is_number_integer() || !n.is_number_integer() || n.get<std::int64_t>() < 0)
        throw ParseError("modulus and dimension must be integers");
    return {p.get<std::int64_t>(), n.get<std::size_t>()};
}

nlohmann::json FiniteVectorSpace::to_json() const { return {{"modulus", p_}, {"dimension", n_}}; }

FieldVec FiniteVectorSpace::point(std::size_t i) const {
    FieldVec v(n_);
    for (std::size_t c = n_; c-- > 0;) {
        v[c] = static_cast<std::int64_t>(i % static_cast<std::size_t>(p_));
        i /= static_cast<std::size_t>(p_);
    }
    return v;
}

std::size_t FiniteVectorSpace::index_of(const FieldVec& v) const {
    std::size_t i = 0;
    for (auto c : v) i = i * static_cast<std::size_t>(p_) + static_cast<std::size_t>(mod_reduce(c, p_));
    return i;
}

std::string FiniteVectorSpace::name() const { return "GF(" + std::to_string(p_) + ")^" + std::to_string(n_); }

FieldVec parallelogram(const FieldVec& u, const FieldVec& v, const FieldVec& w, std::int64_t p) {
    if (u.size() != v.size() || v.size() != w.size()) throw DimensionMismatch("parallelogram arguments differ in dimension");
    FieldVec out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = mod_reduce(u[i] - v[i] + w[i], p);
    return out;
}

namespace {

std::string format_field_vec(const FieldVec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
}

}  // namespace

std::vector<FieldVec> gf_rref(std::vector<FieldVec> rows, std::int64_t p) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && mod_reduce(rows[pivot][c], p) == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        const std::int64_t inv = mod_inverse(mod_reduce(rows[r][c], p), p);
        for (auto& x : rows[r]) x = mod_reduce(x * inv, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            const std::int64_t f = mod_reduce(rows[i][c], p);
            if (f == 0) continue;
            for (std::size_t k = 0; k < cols; ++k) rows[i][k] = mod_reduce(rows[i][k] - f * rows[r][k], p);
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

bool Subspace::contains(const FieldVec& v, std::int64_t p) const {
    const FieldVec r = reduce(v, p);
    return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
}

FieldVec Subspace::reduce(const FieldVec& v, std::int64_t p) const {
    FieldVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod_reduce(v[i], p);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::int64_t f = out[pivots[i]];
        if (f == 0) continue;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = mod_reduce(out[k] - f * basis[i][k], p);
    }
    return out;
}

Subspace make_subspace(std::vector<FieldVec> spanning, std::int64_t p) {
    Subspace u;
    u.basis = gf_rref(std::move(spanning), p);
    for (const auto& row : u.basis)
        u.pivots.push_back(static_cast<std::size_t>(
            std::find_if(row.begin(), row.end(), [](std::int64_t x) { return x != 0; }) - row.begin()));
    return u;
}

Subspace subspace_join(const Subspace& a, const Subspace& b, std::int64_t p) {
    std::vector<FieldVec> rows = a.basis;
    rows.insert(rows.end(), b.basis.begin(), b.basis.end());
    return make_subspace(std::move(rows), p);
}

std::string subspace_label(const Subspace& u, std::size_t n) {
    if (u.dim() == 0) return "0";
    if (u.dim() == n) return "V";
    std::string out = "span{";
    for (std::size_t i = 0; i < u.basis.size(); ++i) out += (i ? "," : "") + format_field_vec(u.basis[i]);
    return out + "}";
}

std::vector<Subspace> enumerate_subspaces(const FiniteVectorSpace& space) {
    const std::int64_t p = space.modulus();
    const std::size_t n = space.dimension();
    std::vector<Subspace> out;
    for (std::size_t k = 0; k <= n; ++k) {
        // pivot columns as a k-combination in lexicographic order
        std::vector<std::size_t> piv(k);
        std::iota(piv.begin(), piv.end(), std::size_t{0});
        while (true) {
            std::vector<std::pair<std::size_t, std::size_t>> free;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t c = piv[i] + 1; c < n; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(i, c);
            std::vector<std::int64_t> digits(free.size(), 0);
            while (true) {
                Subspace u;
                u.pivots = piv;
                u.basis.assign(k, FieldVec(n, 0));
                for (std::size_t i = 0; i < k; ++i) u.basis[i][piv[i]] = 1;
                for (std::size_t f = 0; f < free.size(); ++f) u.basis[free[f].first][free[f].second] = digits[f];
                out.push_back(std::move(u));
                std::size_t pos = free.size();
                while (pos > 0 && ++digits[pos - 1] == p) digits[--pos] = 0;
                if (pos == 0) break;
            }
            std::size_t i = k;
            while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++piv[i - 1];
            for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
    return out;
}

// ------------------------------------------------------------------ models

AffineSpaceModel::AffineSpaceModel(FiniteVectorSpace space) : space_(space) {
    for (std::size_t i = 0; i < space_.size(); ++i) carrier_.push_back({i, {}, space_.point(i)});
}

Element AffineSpaceModel::apply(const Rational& k, const Element& x, const Element& y) const {
    const std::int64_t p = space_.modulus();
    FieldVec r = field_mean(rational_to_residue(k, p), x.residues, y.residues, p);
    const std::size_t i = space_.index_of(r);
    return {i, {}, std::move(r)};
}

std::string AffineSpaceModel::format(const Element& e) const { return format_field_vec(e.residues); }

CosetAlgebra::CosetAlgebra(FiniteVectorSpace space) : space_(space), subspaces_(enumerate_subspaces(space)) {
    const std::int64_t p = space_.modulus();
    const std::size_t m = subspaces_.size();
    std::vector<std::string> labels;
    for (const auto& u : subspaces_) labels.push_back(subspace_label(u, space_.dimension()));
    std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            const Subspace j = subspace_join(subspaces_[a], subspaces_[b], p);
            table[a][b] = static_cast<std::size_t>(std::find(subspaces_.begin(), subspaces_.end(), j) - subspaces_.begin());
        }
    lattice_ = FiniteSemilattice::from_table(std::move(labels), std::move(table));
    for (std::size_t s = 0; s < m; ++s) {
        fiber_start_.push_back(carrier_.size());
        std::set<FieldVec> reps;
        for (std::size_t i = 0; i < space_.size(); ++i) reps.insert(subspaces_[s].reduce(space_.point(i), p));
        for (const auto& r : reps) carrier_.push_back({s, {}, r});
    }
    fiber_start_.push_back(carrier_.size());
}

std::size_t CosetAlgebra::coset_index(const Element& e) const {
    const auto first = carrier_.begin() + static_cast<std::ptrdiff_t>(fiber_start_.at(e.tag));
    const auto last = carrier_.begin() + static_cast<std::ptrdiff_t>(fiber_start_.at(e.tag + 1));
    const auto it = std::lower_bound(first, last, e.residues,
                                     [](const Element& a, const FieldVec& v) { return a.residues < v; });
    if (it == last || it->residues != e.residues) throw Error("not a canonical coset: " + format(e));
    return static_cast<std::size_t>(it - carrier_.begin());
}

Element CosetAlgebra::coset(std::size_t subspace, const FieldVec& v) const {
    return {subspace, {}, subspaces_.at(subspace).reduce(v, space_.modulus())};
}

Element CosetAlgebra::apply(std::int64_t k, const Element& x, const Element& y) const {
    const std::int64_t p = space_.modulus();
    k = mod_reduce(k, p);
    // (1-k)U1 + kU2 collapses to one side when a coefficient vanishes
    const std::size_t u = k == 0 ? x.tag : k == 1 ? y.tag : join(x.tag, y.tag);
    return coset(u, field_mean(k, x.residues, y.residues, p));
}

Element CosetAlgebra::apply(const Rational& k, const Element& x, const Element& y) const {
    return apply(rational_to_residue(k, space_.modulus()), x, y);
}

Element CosetAlgebra::parallelogram(const Element& x, const Element& y, const Element& z) const {
    const std::size_t u = join(join(x.tag, y.tag), z.tag);
    return coset(u, barycentra::parallelogram(x.residues, y.residues, z.residues, space_.modulus()));
}

std::string CosetAlgebra::format(const Element& e) const {
    const auto& u = subspaces_.at(e.tag);
    if (u.dim() == space_.dimension()) return "V";
    if (u.dim() == 0) return format_field_vec(e.residues);
    return format_field_vec(e.residues) + "+" + subspace_label(u, space_.dimension());
}

std::vector<std::size_t> CosetAlgebra::points(const Element& c) const {
    std::vector<std::size_t> out;
    const auto& u = subspaces_.at(c.tag);
    for (std::size_t i = 0; i < space_.size(); ++i)
        if (u.reduce(space_.point(i), space_.modulus()) == c.residues) out.push_back(i);
    return out;
}

std::vector<std::size_t> CosetAlgebra::fiber(std::size_t subspace) const {
    std::vector<std::size_t> out(fiber_start_.at(subspace + 1) - fiber_start_.at(subspace));
    std::iota(out.begin(), out.end(), fiber_start_.at(subspace));
    return out;
}

// ----------------------------------------------------------- verification

namespace {

nlohmann::json check_json(const std::string& name, std::size_t checked, const std::optional<std::string>& w) {
    nlohmann::json j{{"check", name}, {"checked", checked}, {"result", w ? "fail" : "pass"}};
    if (w) j["witness"] = *w;
    return j;
}

void require_proper_weight(std::int64_t k, std::int64_t p) {
    const std::int64_t r = mod_reduce(k, p);
    if (r == 0 || r == 1) throw DomainError("k must lie outside {0,1}, got " + std::to_string(k));
}

// Sorted point indices of the setwise image {f(u) : u in product of the cosets}.
template <class F>
std::vector<std::size_t> image_of(const CosetAlgebra& alg, const std::vector<std::vector<std::size_t>>& pts,
                                  const std::vector<std::size_t>& args, F&& f) {
    const auto& space = alg.space();
    std::vector<char> hit(space.size(), 0);
    std::vector<std::size_t> pos(args.size(), 0);
    while (true) {
        std::vector<FieldVec> vs;
        for (std::size_t a = 0; a < args.size(); ++a) vs.push_back(space.point(pts[args[a]][pos[a]]));
        hit[space.index_of(f(vs))] = 1;
        std::size_t a = args.size();
        while (a > 0 && ++pos[a - 1] == pts[args[a - 1]].size()) pos[--a] = 0;
        if (a == 0) break;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < hit.size(); ++i)
        if (hit[i]) out.push_back(i);
    return out;
}

std::vector<std::vector<std::size_t>> all_points(const CosetAlgebra& alg) {
    std::vector<std::vector<std::size_t>> pts;
    for (const auto& c : alg.elements()) pts.push_back(alg.points(c));
    return pts;
}

}  // namespace

nlohmann::json LiftReport::to_json() const {
    nlohmann::json j{{"method", method}, {"checked", checked}, {"result", pass() ? "pass" : "fail"}};
    if (witness) j["witness"] = *witness;
    return j;
}

LiftReport verify_lifted_operations(const CosetAlgebra& alg, Execution exec, std::size_t budget,
                                    std::size_t samples, std::uint64_t seed) {
    const auto& cosets = alg.elements();
    const std::size_t m = cosets.size();
    const std::int64_t p = alg.space().modulus();
    const auto pts = all_points(alg);
    std::size_t total = 0;
    for (const auto& v : pts) total += v.size();
    const long double cost = static_cast<long double>(total) * total * (p + total);

    auto check_k = [&](std::int64_t k, std::size_t a, std::size_t b) -> std::optional<std::string> {
        const auto img = image_of(alg, pts, {a, b}, [&](const std::vector<FieldVec>& v) {
            return field_mean(k, v[0], v[1], p);
        });
        const Element r = alg.apply(k, cosets[a], cosets[b]);
        if (img != alg.points(r))
            return std::to_string(k) + "(" + alg.format(cosets[a]) + ", " + alg.format(cosets[b]) +
                   ") is not the single coset " + alg.format(r);
        return std::nullopt;
    };
    auto check_p = [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
        const auto img = image_of(alg, pts, {a, b, c}, [&](const std::vector<FieldVec>& v) {
            return parallelogram(v[0], v[1], v[2], p);
        });
        const Element r = alg.parallelogram(cosets[a], cosets[b], cosets[c]);
        if (img != alg.points(r))
            return "P(" + alg.format(cosets[a]) + ", " + alg.format(cosets[b]) + ", " + alg.format(cosets[c]) +
                   ") is not the single coset " + alg.format(r);
        return std::nullopt;
    };

    LiftReport report;
    const std::size_t pairs = static_cast<std::size_t>(p) * m * m;
    std::function<std::optional<std::string>(std::size_t)> trial;
    std::size_t n = 0;
    if (cost <= static_cast<long double>(budget)) {
        report.method = "exhaustive";
        n = pairs + m * m * m;
        trial = [&](std::size_t i) {
            if (i < pairs)
                return check_k(static_cast<std::int64_t>(i / (m * m)), (i / m) % m, i % m);
            i -= pairs;
            return check_p(i / (m * m), (i / m) % m, i % m);
        };
    } else {
        report.method = "sampled";
        n = samples;
        trial = [&](std::size_t i) {
            auto rng = trial_rng(seed, i);
            const auto pick = [&] { return static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m) - 1)); };
            const std::size_t a = pick(), b = pick(), c = pick();
            if (i % 2 == 0) return check_k(uniform_int(rng, 0, p - 1), a, b);
            return check_p(a, b, c);
        };
    }
    report.checked = n;
    if (const auto bad = find_first(n, [&](std::size_t i) { return trial(i).has_value(); }, exec))
        report.witness = trial(*bad);
    return report;
}

nlohmann::json IdentityCheck::to_json() const { return check_json(name, checked, witness); }

IdentityCheck verify_parallelogram_identity(const FiniteVectorSpace& space, Execution exec) {
    const std::int64_t p = space.modulus();
    const std::int64_t half = mod_inverse(2, p);
    const std::size_t q = space.size();
    auto fails = [&](std::size_t i) {
        const FieldVec u = space.point(i / (q * q)), v = space.point((i / q) % q), w = space.point(i % q);
        return parallelogram(u, v, w, p) != field_mean(2, v, field_mean(half, u, w, p), p);
    };
    IdentityCheck c{"parallelogram", q * q * q, std::nullopt};
    if (const auto bad = find_first(q * q * q, fails, exec)) {
        const std::size_t i = *bad;
        c.witness = "u=" + format_field_vec(space.point(i / (q * q))) + " v=" + format_field_vec(space.point((i / q) % q)) +
                    " w=" + format_field_vec(space.point(i % q));
    }
    return c;
}

IdentityCheck verify_pi_homomorphism(const CosetAlgebra& alg, std::int64_t k, Execution exec) {
    require_proper_weight(k, alg.space().modulus());
    const auto& cosets = alg.elements();
    const std::size_t m = cosets.size();
    auto fails = [&](std::size_t i) {
        const Element& a = cosets[i / m];
        const Element& b = cosets[i % m];
        return projection_pi(alg.apply(k, a, b)) != alg.join(projection_pi(a), projection_pi(b));
    };
    IdentityCheck c{"pi-homomorphism", m * m, std::nullopt};
    if (const auto bad = find_first(m * m, fails, exec))
        c.witness = "pi(" + std::to_string(k) + "(" + alg.format(cosets[*bad / m]) + ", " +
                    alg.format(cosets[*bad % m]) + ")) differs from the join of the projections";
    return c;
}

nlohmann::json PlonkaStructureReport::to_json() const {
    return {{"space", space},
            {"k", k},
            {"subspaces", subspaces},
            {"cosets", cosets},
            {"fiber_sizes", fiber_sizes},
            {"checks", {fiber_sizes_check.to_json(), functoriality.to_json(), agreement.to_json()}},
            {"result", pass() ? "pass" : "fail"}};
}

PlonkaStructureReport verify_plonka_structure(const CosetAlgebra& alg, std::int64_t k, Execution exec) {
    const std::int64_t p = alg.space().modulus();
    require_proper_weight(k, p);
    const auto& subs = alg.subspaces();
    const auto& lat = alg.lattice();
    const auto& cosets = alg.elements();
    const std::size_t m = subs.size(), c = cosets.size();

    PlonkaStructureReport r;
    r.space = alg.space().to_json();
    r.k = mod_reduce(k, p);
    r.subspaces = m;
    r.cosets = c;

    r.fiber_sizes_check.name = "fiber-sizes";
    r.fiber_sizes_check.checked = m;
    for (std::size_t s = 0; s < m; ++s) {
        r.fiber_sizes.push_back(alg.fiber(s).size());
        std::size_t expected = 1;
        for (std::size_t d = subs[s].dim(); d < alg.space().dimension(); ++d) expected *= static_cast<std::size_t>(p);
        if (r.fiber_sizes.back() != expected && !r.fiber_sizes_check.witness)
            r.fiber_sizes_check.witness = "fiber over " + lat.label(s) + " has " +
                                          std::to_string(r.fiber_sizes.back()) + " cosets, expected " +
                                          std::to_string(expected);
    }

    // x + U_s -> x + U_t
    auto transport = [&](const Element& e, std::size_t t) { return alg.coset(t, e.residues); };

    // trial i: coset a = i / m, target chain a.tag <= t <= u with (t, u) = (i % m, every u)
    r.functoriality.name = "functoriality";
    r.functoriality.checked = c * m;
    auto functor_fails = [&](std::size_t i) -> std::optional<std::string> {
        const Element& a = cosets[i / m];
        const std::size_t s = a.tag, t = i % m;
        if (!lat.leq(s, t)) return std::nullopt;
        if (s == t && transport(a, s) != a) return "phi(" + lat.label(s) + "," + lat.label(s) + ") is not the identity";
        for (std::size_t u = 0; u < m; ++u) {
            if (!lat.leq(t, u)) continue;
            if (transport(transport(a, t), u) != transport(a, u))
                return "phi(" + lat.label(t) + "," + lat.label(u) + ") o phi(" + lat.label(s) + "," + lat.label(t) +
                       ") != phi(" + lat.label(s) + "," + lat.label(u) + ") at " + alg.format(a);
        }
        for (std::size_t b : alg.fiber(s))
            if (transport(alg.apply(k, a, cosets[b]), t) != alg.apply(k, transport(a, t), transport(cosets[b], t)))
                return "phi(" + lat.label(s) + "," + lat.label(t) + ") does not preserve k at " + alg.format(a) +
                       ", " + alg.format(cosets[b]);
        return std::nullopt;
    };
    if (const auto bad = find_first(c * m, [&](std::size_t i) { return functor_fails(i).has_value(); }, exec))
        r.functoriality.witness = functor_fails(*bad);

    // k on cosets = transport to the join fiber, then operate there; the setwise image is the oracle
    r.agreement.name = "operation-agreement";
    r.agreement.checked = c * c;
    const auto pts = all_points(alg);
    auto agree_fails = [&](std::size_t i) -> std::optional<std::string> {
        const Element& a = cosets[i / c];
        const Element& b = cosets[i % c];
        const std::size_t u = alg.join(a.tag, b.tag);
        const Element plonka = alg.coset(u, field_mean(r.k, transport(a, u).residues, transport(b, u).residues, p));
        const auto img = image_of(alg, pts, {i / c, i % c},
                                  [&](const std::vector<FieldVec>& v) { return field_mean(r.k, v[0], v[1], p); });
        if (img != alg.points(plonka) || alg.apply(r.k, a, b) != plonka)
            return std::to_string(r.k) + "(" + alg.format(a) + ", " + alg.format(b) + ") = " +
                   alg.format(alg.apply(r.k, a, b)) + " but the sum formula gives " + alg.format(plonka);
        return std::nullopt;
    };
    if (const auto bad = find_first(c * c, [&](std::size_t i) { return agree_fails(i).has_value(); }, exec))
        r.agreement.witness = agree_fails(*bad);
    return r;
}

nlohmann::json FiberCertificate::to_json() const {
    nlohmann::json j{{"subspace", subspace}, {"size", size},   {"method", method},
                     {"cancellative", cancellative}, {"open", open}};
    if (witness) j["witness"] = *witness;
    return j;
}

bool ProjectiveReplicaReport::pass() const {
    return quotient_is_semilattice && isomorphic_to_subspace_lattice && !hom_witness &&
           std::all_of(certificates.begin(), certificates.end(), [](const FiberCertificate& f) { return f.open; });
}

nlohmann::json ProjectiveReplicaReport::to_json() const {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& f : certificates) certs.push_back(f.to_json());
    nlohmann::json j{{"weights", weights},
                     {"class_count", replica.size()},
                     {"semilattice", replica.to_json()},
                     {"quotient_is_semilattice", quotient_is_semilattice},
                     {"isomorphic_to_subspace_lattice", isomorphic_to_subspace_lattice},
                     {"certificates", certs},
                     {"result", pass() ? "pass" : "fail"}};
    if (hom_witness) j["hom_witness"] = *hom_witness;
    return j;
}

namespace {

FiberCertificate certify_fiber(const CosetAlgebra& alg, std::size_t s, const std::vector<std::int64_t>& weights,
                               Execution exec) {
    const auto& cosets = alg.elements();
    const auto members = alg.fiber(s);
    const std::size_t n = members.size();
    // op[k][a][b] = local index of k(a, b)
    std::vector<std::vector<std::vector<std::size_t>>> op(weights.size(),
                                                          std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n)));
    for (std::size_t w = 0; w < weights.size(); ++w)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                op[w][a][b] = alg.coset_index(alg.apply(weights[w], cosets[members[a]], cosets[members[b]])) - members[0];

    FiberCertificate cert;
    cert.subspace = alg.lattice().label(s);
    cert.size = n;
    cert.cancellative = true;
    for (std::size_t w = 0; w < weights.size() && cert.cancellative; ++w)
        for (std::size_t x = 0; x < n && cert.cancellative; ++x) {
            std::vector<char> seen(n, 0);
            for (std::size_t y = 0; y < n; ++y) {
                if (seen[op[w][x][y]]) {
                    cert.cancellative = false;
                    break;
                }
                seen[op[w][x][y]] = 1;
            }
        }

    if (n <= kExhaustiveWallLimit) {
        cert.method = "exhaustive-wall-search";
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        const std::size_t proper = n <= 1 ? 0 : static_cast<std::size_t>(full - 1);
        // trial i tests the subset with bit pattern i + 1
        auto is_wall = [&](std::size_t i) {
            const std::uint64_t wset = i + 1;
            auto in = [&](std::size_t e) { return (wset >> e) & 1; };
            for (std::size_t w = 0; w < weights.size(); ++w)
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        if (static_cast<bool>(in(op[w][a][b])) != (in(a) && in(b))) return false;
            return true;
        };
        if (const auto bad = find_first(proper, is_wall, exec)) {
            std::string names;
            for (std::size_t e = 0; e < n; ++e)
                if (((*bad + 1) >> e) & 1) names += (names.empty() ? "" : ", ") + alg.format(cosets[members[e]]);
            cert.witness = "proper wall {" + names + "}";
        }
        cert.open = !cert.witness;
        return cert;
    }

    // a in W and a = k(b, c) force b into W; closure from every a must reach the whole fiber
    cert.method = "cancellative+argument-closure";
    std::vector<std::vector<char>> forces(n, std::vector<char>(n, 0));
    for (std::size_t w = 0; w < weights.size(); ++w)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) forces[op[w][b][c]][b] = 1;
    auto unreachable = [&](std::size_t start) {
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < n; ++b)
                if (forces[a][b] && !seen[b]) {
                    seen[b] = 1;
                    stack.push_back(b);
                }
        }
        return std::find(seen.begin(), seen.end(), 0) != seen.end();
    };
    if (const auto bad = find_first(n, unreachable, exec))
        cert.witness = "closure from " + alg.format(cosets[members[*bad]]) + " misses part of the fiber";
    if (!cert.cancellative && !cert.witness) cert.witness = "fiber is not cancellative";
    cert.open = cert.cancellative && !cert.witness;
    return cert;
}

}  // namespace

ProjectiveReplicaReport verify_replica_is_projective(const CosetAlgebra& alg, std::vector<std::int64_t> weights,
                                                     Execution exec) {
    const std::int64_t p = alg.space().modulus();
    if (weights.empty())
        for (std::int64_t k = 2; k < p; ++k) weights.push_back(k);
    for (auto& k : weights) {
        require_proper_weight(k, p);
        k = mod_reduce(k, p);
    }
    const auto& cosets = alg.elements();
    const std::size_t m = alg.subspaces().size(), c = cosets.size();

    ProjectiveReplicaReport r;
    r.weights = weights;

    // quotient table from one representative pair per class pair
    std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = 0; t < m; ++t)
            table[s][t] = projection_pi(alg.apply(weights[0], cosets[alg.fiber(s)[0]], cosets[alg.fiber(t)[0]]));
    std::vector<std::string> labels = alg.lattice().labels();

    auto hom_fails = [&](std::size_t i) {
        const std::size_t w = i / (c * c), a = (i / c) % c, b = i % c;
        return projection_pi(alg.apply(weights[w], cosets[a], cosets[b])) != table[cosets[a].tag][cosets[b].tag];
    };
    if (const auto bad = find_first(weights.size() * c * c, hom_fails, exec)) {
        const std::size_t i = *bad, a = (i / c) % c, b = i % c;
        r.hom_witness = "class of " + std::to_string(weights[i / (c * c)]) + "(" + alg.format(cosets[a]) + ", " +
                        alg.format(cosets[b]) + ") depends on the representatives";
    }
    try {
        r.replica = FiniteSemilattice::from_table(labels, table);
        r.quotient_is_semilattice = true;
        r.isomorphic_to_subspace_lattice = is_isomorphic(r.replica, alg.lattice());
    } catch (const SemilatticeAxiomError&) {
        r.quotient_is_semilattice = false;
    }
    for (std::size_t s = 0; s < m; ++s) r.certificates.push_back(certify_fiber(alg, s, weights, exec));
    return r;
}

// ---------------------------------------------------------- rational demo

namespace {

std::string rational_label(const Matrix& basis, std::size_t n) {
    if (basis.empty()) return "0";
    if (basis.size() == n) return "Q^" + std::to_string(n);
    std::string out = "span{";
    for (std::size_t i = 0; i < basis.size(); ++i) out += (i ? "," : "") + to_string(basis[i]);
    return out + "}";
}

Matrix canonical_basis(Matrix rows) {
    rref(rows);
    return rows;
}

std::vector<std::size_t> pivot_columns(const Matrix& basis) {
    std::vector<std::size_t> out;
    for (const auto& row : basis)
        out.push_back(static_cast<std::size_t>(
            std::find_if(row.begin(), row.end(), [](const Rational& x) { return x != 0; }) - row.begin()));
    return out;
}

// canonical representative of v + U: zero the pivot coordinates
Vec reduce_rational(const Matrix& basis, Vec v) {
    const auto piv = pivot_columns(basis);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Rational f = v[piv[i]];
        if (f != 0) v = subtract(v, scale(f, basis[i]));
    }
    return v;
}

}  // namespace

RationalFamily RationalFamily::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("subspaces"))
        throw ParseError("family JSON needs \"ambient_dim\" and \"subspaces\"");
    RationalFamily f;
    f.ambient_dim = j.at("ambient_dim").get<std::size_t>();
    if (f.ambient_dim == 0 || f.ambient_dim > 4) throw DomainError("ambient_dim must be between 1 and 4");
    for (const auto& s : j.at("subspaces")) {
        Matrix rows;
        for (const auto& b : s.value("basis", nlohmann::json::array())) {
            rows.push_back(parse_point(b));
            if (rows.back().size() != f.ambient_dim) throw DimensionMismatch("basis vector has the wrong dimension");
        }
        Matrix basis = canonical_basis(std::move(rows));
        if (std::find(f.subspaces.begin(), f.subspaces.end(), basis) != f.subspaces.end())
            throw FamilyError("subspace " + rational_label(basis, f.ambient_dim) + " listed twice");
        f.names.push_back(s.value("name", rational_label(basis, f.ambient_dim)));
        f.subspaces.push_back(std::move(basis));
    }
    if (f.subspaces.empty()) throw ParseError("family must list at least one subspace");
    return f;
}

nlohmann::json CosetDemoReport::to_json() const {
    nlohmann::json j{{"samples", samples},
                     {"agree", agree},
                     {"functoriality", functoriality ? "pass" : "fail"},
                     {"summary", "agree=" + std::to_string(agree) + "/" + std::to_string(samples)},
                     {"sum", sum.to_json()},
                     {"result", pass() ? "pass" : "fail"}};
    if (witness) j["witness"] = *witness;
    return j;
}

CosetDemoReport rational_coset_demo(const RationalFamily& family, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = family.ambient_dim, m = family.subspaces.size();
    std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Matrix rows = family.subspaces[a];
            rows.insert(rows.end(), family.subspaces[b].begin(), family.subspaces[b].end());
            const Matrix j = canonical_basis(std::move(rows));
            const auto it = std::find(family.subspaces.begin(), family.subspaces.end(), j);
            if (it == family.subspaces.end())
                throw FamilyError("family is not join-closed: missing join " + rational_label(j, n) + " of " +
                                  family.names[a] + " and " + family.names[b]);
            table[a][b] = static_cast<std::size_t>(it - family.subspaces.begin());
        }
    FiniteSemilattice index = FiniteSemilattice::from_table(family.names, table);

    // fiber over U: canonical representatives, i.e. the coordinates off the pivots
    std::vector<Fiber> fibers;
    for (std::size_t s = 0; s < m; ++s) {
        const auto piv = pivot_columns(family.subspaces[s]);
        Matrix dirs;
        for (std::size_t col = 0; col < n; ++col)
            if (std::find(piv.begin(), piv.end(), col) == piv.end()) {
                Vec e(n, 0);
                e[col] = 1;
                dirs.push_back(std::move(e));
            }
        fibers.push_back(Fiber::affine_subspace(Vec(n, 0), std::move(dirs), "Q^" + std::to_string(n) + "/" + family.names[s]));
    }
    std::vector<TransitionMap> transitions;
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = 0; t < m; ++t) {
            if (s == t || !index.leq(s, t)) continue;
            AffineMap map{Matrix(n, Vec(n, 0)), Vec(n, 0), n};
            for (std::size_t col = 0; col < n; ++col) {
                Vec e(n, 0);
                e[col] = 1;
                const Vec img = reduce_rational(family.subspaces[t], e);
                for (std::size_t row = 0; row < n; ++row) map.matrix[row][col] = img[row];
            }
            transitions.push_back({family.names[s], family.names[t], std::move(map)});
        }

    CosetDemoReport r{samples, 0, false, PlonkaSum::build(FiniteSemilattice::chain({"0"}), {Fiber::singleton({})}, {}),
                      std::nullopt};
    try {
        r.sum = PlonkaSum::build(index, std::move(fibers), std::move(transitions));
        r.functoriality = true;
    } catch (const PlonkaError& e) {
        r.witness = e.what();
        return r;
    }

    auto random_in = [&](const Matrix& basis, std::mt19937_64& rng) {
        Vec v(n, 0);
        for (const auto& b : basis) v = add(v, scale(random_rational(rng, 5), b));
        return v;
    };
    std::vector<std::optional<std::string>> failures(samples);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long k = 0; k < static_cast<long long>(samples); ++k) {
        const auto i = static_cast<std::size_t>(k);
        auto rng = trial_rng(seed, i);
        const auto s = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m) - 1));
        const auto t = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m) - 1));
        Vec x(n), y(n);
        for (auto& c : x) c = random_rational(rng, 5);
        for (auto& c : y) c = random_rational(rng, 5);
        const Rational p = random_weight(rng);
        const Element a = point_element(reduce_rational(family.subspaces[s], x), s);
        const Element b = point_element(reduce_rational(family.subspaces[t], y), t);
        const Element z = r.sum.eval(p, a, b);
        // direct mean of arbitrary members of the two cosets
        const Vec direct = affine_mean(p, add(x, random_in(family.subspaces[s], rng)),
                                       add(y, random_in(family.subspaces[t], rng)));
        const std::size_t u = index.join(s, t);
        Matrix test = family.subspaces[u];
        test.push_back(subtract(direct, z.point));
        if (z.tag != u || rank(std::move(test)) != family.subspaces[u].size() ||
            reduce_rational(family.subspaces[u], direct) != z.point)
            failures[i] = p.str() + "(" + r.sum.format(a) + ", " + r.sum.format(b) + ") = " + r.sum.format(z) +
                          " but the direct mean " + to_string(direct) + " lies elsewhere";
    }
    for (const auto& f : failures) {
        if (!f) ++r.agree;
        else if (!r.witness) r.witness = f;
    }
    return r;
}

}  // namespace barycentra
