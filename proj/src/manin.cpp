#include "heckestat/manin.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace heckestat {
namespace modsym {

namespace {

using exactint::HnfBuilder;
using exactint::HnfResult;
using exactint::IntegerMatrix;
using exactint::kernel_lattice;
using ffalg::FpMatrix;
using ffalg::PrimeField;

[[noreturn]] void fail(const char* msg) { throw std::logic_error(msg); }

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

std::int64_t xgcd_i64(std::int64_t a, std::int64_t b, std::int64_t& x,
                      std::int64_t& y) {
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = a, r1 = b;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t t;
        t = r0 - q * r1; r0 = r1; r1 = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (r0 < 0) { r0 = -r0; x0 = -x0; y0 = -y0; }
    x = x0;
    y = y0;
    return r0;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("manin: 64-bit coefficient overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("manin: 64-bit coefficient overflow");
    return r;
}

// ---------------------------------------------------------------------
// polynomial action tables

// Coefficients of (a X + b Y)^e as a vector indexed by the X-exponent.
std::vector<std::int64_t> linear_power(std::int64_t a, std::int64_t b,
                                       int e) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(e) + 1, 0);
    // binomial expansion: coeff of X^t is C(e,t) a^t b^(e-t)
    std::vector<std::int64_t> binom(static_cast<std::size_t>(e) + 1, 0);
    binom[0] = 1;
    for (int row = 1; row <= e; ++row)
        for (int t = row; t > 0; --t)
            binom[static_cast<std::size_t>(t)] = checked_add(
                binom[static_cast<std::size_t>(t)],
                binom[static_cast<std::size_t>(t) - 1]);
    std::int64_t apow = 1;
    for (int t = 0; t <= e; ++t) {
        std::int64_t term = checked_mul(binom[static_cast<std::size_t>(t)],
                                        apow);
        std::int64_t bpow = 1;
        for (int u = 0; u < e - t; ++u) bpow = checked_mul(bpow, b);
        c[static_cast<std::size_t>(t)] = checked_mul(term, bpow);
        apow = checked_mul(apow, a);
    }
    return c;
}

// Row i of the substitution X^i Y^(kk-i) -> (a X + b Y)^i (c X + d Y)^(kk-i);
// entry j is the coefficient of X^j Y^(kk-j).
// The full table is (kk+1) x (kk+1), row-major.
std::vector<std::int64_t> monomial_action_table(const Mat22& h, int kk) {
    const std::size_t n = static_cast<std::size_t>(kk) + 1;
    std::vector<std::int64_t> table(n * n, 0);
    for (int i = 0; i <= kk; ++i) {
        std::vector<std::int64_t> top = linear_power(h[0], h[1], i);
        std::vector<std::int64_t> bot = linear_power(h[2], h[3], kk - i);
        for (std::size_t t = 0; t < top.size(); ++t)
            for (std::size_t u = 0; u < bot.size(); ++u) {
                auto& dst = table[static_cast<std::size_t>(i) * n + t + u];
                dst = checked_add(dst, checked_mul(top[t], bot[u]));
            }
    }
    return table;
}

Mat22 adjugate(const Mat22& m) { return {m[3], -m[1], -m[2], m[0]}; }

// ---------------------------------------------------------------------
// index, Sturm bound, dimension oracle

std::vector<long> prime_divisors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

long gamma0_index(long N) {
    if (N < 1) throw std::invalid_argument("gamma0_index: N must be positive");
    long mu = N;
    for (long p : prime_divisors(N)) mu = mu / p * (p + 1);
    return mu;
}

long sturm_bound(long N, long k) {
    if (N < 1 || k < 2)
        throw std::invalid_argument("sturm_bound: need N >= 1 and k >= 2");
    const long mu = gamma0_index(N);
    return (k * mu + 11) / 12;
}

long dim_oracle(long N, long k) {
    if (N < 2 || !ffalg::is_prime_u64(static_cast<std::uint64_t>(N)))
        throw std::invalid_argument("dim_oracle: level must be prime");
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("dim_oracle: weight must be even, >= 2");
    const long mu = N + 1;
    const long nu_inf = 2;
    long nu2, nu3;
    if (N == 2) nu2 = 1;
    else nu2 = (N % 4 == 1) ? 2 : 0;
    if (N == 3) nu3 = 1;
    else nu3 = (N % 3 == 1) ? 2 : 0;
    // genus of X_0(N): 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 nu_inf
    const long twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * nu_inf;
    if (twelve_g % 12 != 0) fail("dim_oracle: genus formula not integral");
    const long g = twelve_g / 12;
    if (k == 2) return g;
    return (k - 1) * (g - 1) + (k / 2 - 1) * nu_inf + (k / 4) * nu2 +
           (k / 3) * nu3;
}

namespace {

// ---------------------------------------------------------------------
// union-find with signs for the two-term relations

class SignedUnionFind {
public:
    SignedUnionFind(std::size_t n, bool char2)
        : parent_(n), sign_(n, 1), dead_(n, false), char2_(char2) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    // (root, sign of e_i relative to e_root)
    std::pair<std::size_t, int> find(std::size_t i) {
        if (parent_[i] == i) return {i, 1};
        auto [r, s] = find(parent_[i]);
        parent_[i] = r;
        sign_[i] *= s;
        return {r, sign_[i]};
    }

    // Impose e_a = s * e_b.
    void relate(std::size_t a, std::size_t b, int s) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        // e_ra = (s * sb / sa) e_rb
        const int rel = s * sb * sa;
        if (ra == rb) {
            if (rel != 1 && !char2_) dead_[ra] = true;
            return;
        }
        parent_[ra] = rb;
        sign_[ra] = rel;
        if (dead_[ra]) dead_[rb] = true;
    }

    bool is_dead(std::size_t i) {
        auto [r, s] = find(i);
        (void)s;
        return dead_[r];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> sign_;
    std::vector<bool> dead_;
    bool char2_;
};

// ---------------------------------------------------------------------
// sparse Gauss-Jordan elimination over a field

struct QOps {
    using Value = mpq_class;
    bool is_zero(const Value& v) const { return v == 0; }
    Value from_int(std::int64_t n) const {
        return mpq_class(static_cast<long>(n));
    }
    Value neg(const Value& v) const { return -v; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value inv(const Value& v) const { return 1 / v; }
    void add_assign(Value& a, const Value& b) const { a += b; }
};

struct FpOps {
    PrimeField F;
    using Value = std::uint32_t;
    bool is_zero(Value v) const { return v == 0; }
    Value from_int(std::int64_t n) const { return F.reduce(n); }
    Value neg(Value v) const { return F.neg(v); }
    Value mul(Value a, Value b) const { return F.mul(a, b); }
    Value inv(Value v) const { return F.inv(v); }
    void add_assign(Value& a, Value b) const { a = F.add(a, b); }
};

template <class Ops>
class SparseEliminator {
public:
    using V = typename Ops::Value;
    using Entry = std::pair<std::uint32_t, V>;

    SparseEliminator(Ops ops, std::size_t cols)
        : ops_(ops), col_rows_(cols) {}

    void add_row(std::vector<Entry> entries) {
        if (entries.empty()) return;
        const std::uint32_t idx = static_cast<std::uint32_t>(rows_.size());
        for (const Entry& e : entries) col_rows_[e.first].push_back(idx);
        rows_.push_back(Row{std::move(entries), false});
    }

    void run() {
        for (;;) {
            // unprocessed nonzero row of minimal length
            std::size_t best = rows_.size();
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                Row& r = rows_[i];
                if (r.processed || r.e.empty()) continue;
                if (best == rows_.size() ||
                    r.e.size() < rows_[best].e.size())
                    best = i;
            }
            if (best == rows_.size()) break;
            Row& prow = rows_[best];

            // pivot column with fewest live occurrences
            std::uint32_t pcol = prow.e[0].first;
            std::size_t pocc = live_count(pcol);
            for (const Entry& e : prow.e) {
                const std::size_t occ = live_count(e.first);
                if (occ < pocc) {
                    pocc = occ;
                    pcol = e.first;
                }
            }

            // normalize
            const V piv_inv = ops_.inv(coeff_of(prow, pcol));
            for (Entry& e : prow.e) e.second = ops_.mul(e.second, piv_inv);
            prow.processed = true;
            pivot_of_col_[pcol] = best;

            // eliminate pcol from every other row
            std::vector<std::uint32_t> occ = col_rows_[pcol];
            for (std::uint32_t ri : occ) {
                if (ri == best) continue;
                Row& r = rows_[ri];
                const V c = coeff_of(r, pcol);
                if (ops_.is_zero(c)) continue;
                axpy(r, ops_.neg(c), prow, ri);
            }
            col_rows_[pcol].clear();
            col_rows_[pcol].push_back(static_cast<std::uint32_t>(best));
        }
    }

    // After run(): e_pivotcol = -sum of the other entries of its row.
    const std::map<std::uint32_t, std::size_t>& pivots() const {
        return pivot_of_col_;
    }
    const std::vector<Entry>& row_of(std::size_t idx) const {
        return rows_[idx].e;
    }

private:
    struct Row {
        std::vector<Entry> e;  // sorted by column
        bool processed;
    };

    V coeff_of(const Row& r, std::uint32_t col) const {
        auto it = std::lower_bound(
            r.e.begin(), r.e.end(), col,
            [](const Entry& e, std::uint32_t c) { return e.first < c; });
        if (it != r.e.end() && it->first == col) return it->second;
        return ops_.from_int(0);
    }

    std::size_t live_count(std::uint32_t col) {
        auto& v = col_rows_[col];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        std::size_t n = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Row& r = rows_[v[i]];
            if (!ops_.is_zero(coeff_of(r, col))) v[n++] = v[i];
        }
        v.resize(n);
        return n;
    }

    // r += c * p (p processed row), registering new columns of r.
    void axpy(Row& r, const V& c, const Row& p, std::uint32_t r_index) {
        std::vector<Entry> out;
        out.reserve(r.e.size() + p.e.size());
        std::size_t i = 0, j = 0;
        while (i < r.e.size() || j < p.e.size()) {
            if (j == p.e.size() ||
                (i < r.e.size() && r.e[i].first < p.e[j].first)) {
                out.push_back(std::move(r.e[i++]));
            } else if (i == r.e.size() || p.e[j].first < r.e[i].first) {
                V v = ops_.mul(c, p.e[j].second);
                if (!ops_.is_zero(v)) {
                    col_rows_[p.e[j].first].push_back(r_index);
                    out.emplace_back(p.e[j].first, std::move(v));
                }
                ++j;
            } else {
                V v = r.e[i].second;
                ops_.add_assign(v, ops_.mul(c, p.e[j].second));
                if (!ops_.is_zero(v)) out.emplace_back(r.e[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        r.e = std::move(out);
    }

    Ops ops_;
    std::vector<Row> rows_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::map<std::uint32_t, std::size_t> pivot_of_col_;
};

const Mat22 kSigma{0, -1, 1, 0};
const Mat22 kTau{0, -1, 1, -1};
const Mat22 kTauSq{-1, 1, -1, 0};

struct PresentationScratch {
    std::shared_ptr<const P1Line> p1;
    std::size_t gen_count;
    std::vector<std::size_t> free_gens;       // generator indices
    std::vector<long> gen_to_free;            // generator -> free slot or -1
    // dense projection rows built per domain by the caller
};

// Builds the sigma identification and the tau relation rows, eliminates,
// and produces the projection matrix over the given field ops.
template <class Ops>
void build_presentation(long N, long k, Ops ops, bool char2,
                        PresentationScratch& out,
                        std::vector<std::vector<typename Ops::Value>>& proj) {
    using V = typename Ops::Value;
    const auto p1 = std::make_shared<P1Line>(static_cast<std::uint32_t>(N));
    const std::size_t P = p1->size();
    const int kk = static_cast<int>(k) - 2;
    const std::size_t M = static_cast<std::size_t>(kk) + 1;
    const std::size_t G = M * P;

    const auto tau_table = monomial_action_table(kTau, kk);
    const auto tau2_table = monomial_action_table(kTauSq, kk);

    std::vector<long> sigma_img(P), tau_img(P), tau2_img(P);
    for (std::size_t x = 0; x < P; ++x) {
        const P1Element e = p1->at(x);
        const std::int64_t c = e.c, d = e.d;
        auto img = [&](const Mat22& h) {
            return p1->index_of(c * h[0] + d * h[2], c * h[1] + d * h[3]);
        };
        sigma_img[x] = img(kSigma);
        tau_img[x] = img(kTau);
        tau2_img[x] = img(kTauSq);
        if (sigma_img[x] < 0 || tau_img[x] < 0 || tau2_img[x] < 0)
            fail("manin: SL2 image left P1");
    }

    // sigma maps monomial i to (-1)^i * monomial kk - i
    SignedUnionFind uf(G, char2);
    for (std::size_t x = 0; x < P; ++x)
        for (int i = 0; i <= kk; ++i) {
            const std::size_t g = static_cast<std::size_t>(i) * P + x;
            const std::size_t g2 =
                static_cast<std::size_t>(kk - i) * P +
                static_cast<std::size_t>(sigma_img[x]);
            const int sign = (i % 2 == 0) ? 1 : -1;
            // e_g + sign * e_g2 = 0
            uf.relate(g, g2, -sign);
        }

    // live roots get reduced column indices
    std::vector<long> reduced(G, -1);
    std::vector<std::size_t> root_gen;
    for (std::size_t g = 0; g < G; ++g) {
        auto [r, s] = uf.find(g);
        (void)s;
        if (uf.is_dead(g)) continue;
        if (reduced[r] < 0) {
            reduced[r] = static_cast<long>(root_gen.size());
            root_gen.push_back(r);
        }
    }
    const std::size_t R = root_gen.size();

    SparseEliminator<Ops> elim(ops, R);
    {
        std::vector<std::int64_t> acc(R);
        std::vector<std::uint32_t> touched;
        auto add_term = [&](std::size_t gen, std::int64_t coef) {
            if (coef == 0 || uf.is_dead(gen)) return;
            auto [r, s] = uf.find(gen);
            const std::size_t col = static_cast<std::size_t>(reduced[r]);
            if (acc[col] == 0) touched.push_back(
                static_cast<std::uint32_t>(col));
            acc[col] = checked_add(acc[col], s > 0 ? coef : -coef);
        };
        for (std::size_t x = 0; x < P; ++x) {
            const std::size_t xt = static_cast<std::size_t>(tau_img[x]);
            const std::size_t xt2 = static_cast<std::size_t>(tau2_img[x]);
            for (int i = 0; i <= kk; ++i) {
                touched.clear();
                add_term(static_cast<std::size_t>(i) * P + x, 1);
                for (int j = 0; j <= kk; ++j) {
                    add_term(static_cast<std::size_t>(j) * P + xt,
                             tau_table[static_cast<std::size_t>(i) * M +
                                       static_cast<std::size_t>(j)]);
                    add_term(static_cast<std::size_t>(j) * P + xt2,
                             tau2_table[static_cast<std::size_t>(i) * M +
                                        static_cast<std::size_t>(j)]);
                }
                std::sort(touched.begin(), touched.end());
                std::vector<typename SparseEliminator<Ops>::Entry> row;
                for (std::uint32_t col : touched) {
                    V v = ops.from_int(acc[col]);
                    acc[col] = 0;
                    if (!ops.is_zero(v)) row.emplace_back(col, std::move(v));
                }
                if (!row.empty()) elim.add_row(std::move(row));
            }
        }
    }
    elim.run();

    // free columns: reduced columns that never became pivots
    std::vector<long> col_to_free(R, -1);
    out.free_gens.clear();
    for (std::size_t col = 0; col < R; ++col) {
        if (elim.pivots().count(static_cast<std::uint32_t>(col))) continue;
        col_to_free[col] = static_cast<long>(out.free_gens.size());
        out.free_gens.push_back(root_gen[col]);
    }
    const std::size_t n = out.free_gens.size();

    // expression of each reduced column over the free columns
    std::vector<std::vector<std::pair<long, V>>> expr(R);
    for (std::size_t col = 0; col < R; ++col) {
        if (col_to_free[col] >= 0) {
            expr[col].emplace_back(col_to_free[col], ops.from_int(1));
            continue;
        }
        const auto& row = elim.row_of(elim.pivots().at(
            static_cast<std::uint32_t>(col)));
        for (const auto& [c, v] : row) {
            if (c == col) continue;
            const long f = col_to_free[c];
            if (f < 0) fail("manin: elimination left a pivot reference");
            expr[col].emplace_back(f, ops.neg(v));
        }
    }

    // dense projection per generator
    proj.assign(G, {});
    for (std::size_t g = 0; g < G; ++g) {
        proj[g].assign(n, ops.from_int(0));
        if (uf.is_dead(g)) continue;
        auto [r, s] = uf.find(g);
        for (const auto& [f, v] : expr[static_cast<std::size_t>(
                 reduced[r])]) {
            V t = (s > 0) ? v : ops.neg(v);
            ops.add_assign(proj[g][static_cast<std::size_t>(f)], t);
        }
    }

    out.p1 = p1;
    out.gen_count = G;
    out.gen_to_free.assign(G, -1);
    for (std::size_t j = 0; j < n; ++j)
        out.gen_to_free[out.free_gens[j]] = static_cast<long>(j);
}

}  // namespace

ManinSymbolSpace ManinSymbolSpace::build(long N, long k,
                                         CoefficientDomain domain) {
    if (N < 1) throw std::invalid_argument("build_space: N must be >= 1");
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument(
            "build_space: weight must be even and >= 2");

    ManinSymbolSpace s;
    s.N_ = N;
    s.k_ = k;
    s.domain_ = domain;

    PresentationScratch scratch;
    if (domain.is_rational()) {
        std::vector<std::vector<mpq_class>> proj;
        build_presentation(N, k, QOps{}, false, scratch, proj);
        const std::size_t G = scratch.gen_count;
        const std::size_t n = scratch.free_gens.size();
        mpz_class den = 1;
        for (const auto& row : proj)
            for (const mpq_class& q : row)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
                        q.get_den().get_mpz_t());
        auto num = std::make_shared<IntegerMatrix>(G, n);
        for (std::size_t g = 0; g < G; ++g)
            for (std::size_t j = 0; j < n; ++j) {
                const mpq_class& q = proj[g][j];
                num->at(g, j) = q.get_num() * (den / q.get_den());
            }
        s.proj_num_ = std::move(num);
        s.proj_den_ = den;
    } else {
        const PrimeField F = *domain.fp;
        std::vector<std::vector<std::uint32_t>> proj;
        build_presentation(N, k, FpOps{F}, F.p() == 2, scratch, proj);
        const std::size_t G = scratch.gen_count;
        const std::size_t n = scratch.free_gens.size();
        auto fp = std::make_shared<FpMatrix>(F, G, n);
        for (std::size_t g = 0; g < G; ++g)
            for (std::size_t j = 0; j < n; ++j) fp->set(g, j, proj[g][j]);
        s.proj_fp_ = std::move(fp);
    }
    s.p1_ = scratch.p1;
    s.gen_count_ = scratch.gen_count;
    s.free_ = scratch.free_gens;
    return s;
}

const IntegerMatrix& ManinSymbolSpace::projection_num() const {
    if (!proj_num_) fail("projection_num: space is not over Q");
    return *proj_num_;
}

const mpz_class& ManinSymbolSpace::projection_den() const {
    if (!proj_num_) fail("projection_den: space is not over Q");
    return proj_den_;
}

const FpMatrix& ManinSymbolSpace::projection_fp() const {
    if (!proj_fp_) fail("projection_fp: space is not over F_p");
    return *proj_fp_;
}

ManinSymbolSpace build_space(long N, long k, CoefficientDomain domain) {
    return ManinSymbolSpace::build(N, k, domain);
}

// ---------------------------------------------------------------------
// boundary map and the cuspidal subspace

namespace {

// Gamma_0(N)-cusp classes with constructive equivalence: for each class
// we keep a representative primitive vector and its SL2 lift, plus the
// coinvariant reduction of the polynomial part under the cusp stabilizer.
struct CuspClassBase {
    std::int64_t p, q;        // representative, primitive
    Mat22 lift;               // SL2 matrix with first column (p, q)
    std::size_t offset = 0;   // first column in the boundary matrix
    std::size_t dim = 0;
};

Mat22 sl2_lift_of_vector(std::int64_t p, std::int64_t q) {
    std::int64_t s, t;
    if (xgcd_i64(p, q, s, t) != 1) fail("cusp vector not primitive");
    // det (p, -t; q, s) = p s + t q = 1
    return Mat22{p, -t, q, s};
}

// gamma with gamma * (p,q)^T = (p0,q0)^T in Gamma_0(N), if the cusps are
// equivalent.
std::optional<Mat22> cusp_transport(long N, std::int64_t p, std::int64_t q,
                                    const Mat22& m1, const Mat22& m2) {
    const std::int64_t n = N;
    const std::int64_t s = m1[3];  // m1 = (p, *; q, s)
    const std::int64_t q0 = m2[2], s0 = m2[3];
    // j * (q0 q) == q0 s - s0 q (mod N)
    const std::int64_t a = ((q0 % n) * (q % n) % n + n) % n;
    std::int64_t b = ((q0 % n) * (s % n) - (s0 % n) * (q % n)) % n;
    b = (b % n + n) % n;
    const std::int64_t g = gcd_i64(a == 0 ? n : a, n);
    if (b % g != 0) return std::nullopt;
    std::int64_t j;
    if (a == 0) {
        j = 0;  // b == 0 (mod n) here since g == n
    } else {
        const std::int64_t n2 = n / g;
        std::int64_t inv, dummy;
        xgcd_i64((a / g) % n2, n2, inv, dummy);
        inv = ((inv % n2) + n2) % n2;
        j = ((b / g) % n2) * inv % n2;
    }
    // gamma = m2 * (1, j; 0, 1) * m1^{-1}
    auto mul = [](const Mat22& x, const Mat22& y) {
        return Mat22{checked_add(checked_mul(x[0], y[0]),
                                 checked_mul(x[1], y[2])),
                     checked_add(checked_mul(x[0], y[1]),
                                 checked_mul(x[1], y[3])),
                     checked_add(checked_mul(x[2], y[0]),
                                 checked_mul(x[3], y[2])),
                     checked_add(checked_mul(x[2], y[1]),
                                 checked_mul(x[3], y[3]))};
    };
    const Mat22 m1_inv{m1[3], -m1[1], -m1[2], m1[0]};
    const Mat22 uj{1, j, 0, 1};
    Mat22 gamma = mul(mul(m2, uj), m1_inv);
    if (gamma[2] % n != 0) return std::nullopt;
    if (gamma[0] * gamma[3] - gamma[1] * gamma[2] != 1)
        fail("cusp transport is not unimodular");
    if (gamma[0] * p + gamma[1] * q != m2[0] ||
        gamma[2] * p + gamma[3] * q != m2[2])
        fail("cusp transport moved the vector incorrectly");
    return gamma;
}

std::int64_t cusp_width(long N, std::int64_t q) {
    const std::int64_t n = N;
    std::int64_t r = ((q % n) + n) % n;
    std::int64_t rr = (r * r) % n;
    return n / gcd_i64(rr == 0 ? n : rr, n);
}

// Stabilizer generator of the cusp p/q: (1 - pqh, p^2 h; -q^2 h, 1 + pqh).
Mat22 cusp_stabilizer(long N, std::int64_t p, std::int64_t q) {
    const std::int64_t h = cusp_width(N, q);
    return Mat22{1 - checked_mul(checked_mul(p, q), h),
                 checked_mul(checked_mul(p, p), h),
                 -checked_mul(checked_mul(q, q), h),
                 1 + checked_mul(checked_mul(p, q), h)};
}

// Boundary registry over one coefficient domain.
template <class Ops>
class BoundaryBuilder {
public:
    using V = typename Ops::Value;

    BoundaryBuilder(Ops ops, long N, int kk) : ops_(ops), N_(N), kk_(kk) {}

    // Adds sign * (polynomial Q, cusp vector (p, q)) to `row`, reducing
    // through cusp equivalence and stabilizer coinvariants.
    void add_pair(std::vector<std::map<std::size_t, V>>& row_classes,
                  int sign, const std::vector<std::int64_t>& poly,
                  std::int64_t p, std::int64_t q) {
        std::size_t ci = 0;
        Mat22 delta{1, 0, 0, 1};
        for (;; ++ci) {
            if (ci == classes_.size()) {
                register_class(p, q);
                break;
            }
            auto t = cusp_transport(N_, p, q, sl2_lift_of_vector(p, q),
                                    classes_[ci].base.lift);
            if (t) {
                delta = *t;
                break;
            }
        }
        CuspClass& cl = classes_[ci];
        if (cl.base.dim == 0) return;
        // transport the polynomial: left action by delta
        const auto table = monomial_action_table(adjugate(delta), kk_);
        const std::size_t M = static_cast<std::size_t>(kk_) + 1;
        std::vector<V> vec(M, ops_.from_int(0));
        for (std::size_t i = 0; i < M; ++i) {
            if (poly[i] == 0) continue;
            for (std::size_t j = 0; j < M; ++j) {
                const std::int64_t c = table[i * M + j];
                if (c == 0) continue;
                V t = ops_.mul(ops_.from_int(poly[i]), ops_.from_int(c));
                ops_.add_assign(vec[j], t);
            }
        }
        // coinvariant reduction, then read off non-pivot coordinates
        for (const auto& [pc, prow] : cl.reducers) {
            V c = vec[pc];
            if (ops_.is_zero(c)) continue;
            for (std::size_t j = 0; j < M; ++j) {
                V t = ops_.mul(c, ops_.neg(prow[j]));
                ops_.add_assign(vec[j], t);
            }
        }
        if (row_classes.size() < classes_.size())
            row_classes.resize(classes_.size());
        auto& comp = row_classes[ci];
        for (std::size_t t = 0; t < cl.free_coords.size(); ++t) {
            V v = vec[cl.free_coords[t]];
            if (sign < 0) v = ops_.neg(v);
            if (!ops_.is_zero(v)) {
                auto [it, inserted] = comp.try_emplace(t, v);
                if (!inserted) ops_.add_assign(it->second, v);
            }
        }
    }

    std::size_t total_dim() {
        std::size_t off = 0;
        for (auto& c : classes_) {
            c.base.offset = off;
            off += c.base.dim;
        }
        return off;
    }
    std::size_t class_offset(std::size_t ci) const {
        return classes_[ci].base.offset;
    }
    std::size_t class_count() const { return classes_.size(); }

private:
    struct CuspClass {
        CuspClassBase base;
        // rows of the reduced span of (I - A0), keyed by pivot column;
        // rows are normalized with a 1 in the pivot position (stored
        // without it).
        std::vector<std::pair<std::size_t, std::vector<V>>> reducers;
        std::vector<std::size_t> free_coords;
    };

    void register_class(std::int64_t p, std::int64_t q) {
        CuspClass cl;
        cl.base.p = p;
        cl.base.q = q;
        cl.base.lift = sl2_lift_of_vector(p, q);
        const Mat22 gamma0 = cusp_stabilizer(N_, p, q);
        const auto table = monomial_action_table(adjugate(gamma0), kk_);
        const std::size_t M = static_cast<std::size_t>(kk_) + 1;
        // rows of I - A0
        std::vector<std::vector<V>> rows(M, std::vector<V>(M));
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j) {
                rows[i][j] = ops_.from_int((i == j ? 1 : 0));
                ops_.add_assign(rows[i][j],
                                ops_.from_int(-table[i * M + j]));
            }
        // Gauss-Jordan over the field
        std::vector<bool> used(M, false);
        for (std::size_t r = 0; r < M; ++r) {
            std::size_t pc = M;
            for (std::size_t j = 0; j < M; ++j)
                if (!ops_.is_zero(rows[r][j])) {
                    pc = j;
                    break;
                }
            if (pc == M) continue;
            const V inv = ops_.inv(rows[r][pc]);
            for (std::size_t j = 0; j < M; ++j)
                rows[r][j] = ops_.mul(rows[r][j], inv);
            for (std::size_t r2 = 0; r2 < M; ++r2) {
                if (r2 == r) continue;
                V c = rows[r2][pc];
                if (ops_.is_zero(c)) continue;
                for (std::size_t j = 0; j < M; ++j) {
                    V t = ops_.mul(c, ops_.neg(rows[r][j]));
                    ops_.add_assign(rows[r2][j], t);
                }
            }
            used[pc] = true;
            std::vector<V> stored = rows[r];
            stored[pc] = ops_.from_int(0);
            cl.reducers.emplace_back(pc, std::move(stored));
        }
        for (std::size_t j = 0; j < M; ++j)
            if (!used[j]) cl.free_coords.push_back(j);
        cl.base.dim = cl.free_coords.size();
        classes_.push_back(std::move(cl));
    }

    Ops ops_;
    long N_;
    int kk_;
    std::vector<CuspClass> classes_;
};

// Boundary of the free generators as a dense matrix over the domain.
template <class Ops>
std::vector<std::vector<typename Ops::Value>> boundary_matrix(
    const ManinSymbolSpace& space, Ops ops, std::size_t& bdim) {
    using V = typename Ops::Value;
    const int kk = static_cast<int>(space.weight()) - 2;
    const std::size_t M = static_cast<std::size_t>(kk) + 1;
    const std::size_t P = space.p1().size();
    BoundaryBuilder<Ops> bb(ops, space.level(), kk);

    const auto& free_gens = space.free_generators();
    std::vector<std::vector<std::map<std::size_t, V>>> rows(free_gens.size());
    for (std::size_t fi = 0; fi < free_gens.size(); ++fi) {
        const std::size_t g = free_gens[fi];
        const std::size_t i = g / P, x = g % P;
        const P1Element e = space.p1().at(x);
        Mat22 gamma;
        if (space.level() == 1) {
            gamma = Mat22{1, 0, 0, 1};
        } else {
            // SL2 lift with bottom row (c, d): canonical representatives
            // are coprime pairs, so u d + v c = 1 is solvable
            std::int64_t u, v;
            if (xgcd_i64(e.d, e.c, u, v) != 1)
                fail("P1 representative not coprime");
            gamma = Mat22{u, -v, e.c, e.d};
        }
        // left action gamma . P  on the monomial X^i Y^(kk-i)
        const auto table = monomial_action_table(adjugate(gamma), kk);
        std::vector<std::int64_t> poly(M, 0);
        for (std::size_t j = 0; j < M; ++j) poly[j] = table[i * M + j];
        // boundary of (gamma.P){gamma 0, gamma oo}:
        //   +(gamma.P, gamma oo = (a, c)) - (gamma.P, gamma 0 = (b, d))
        bb.add_pair(rows[fi], +1, poly, gamma[0], gamma[2]);
        bb.add_pair(rows[fi], -1, poly, gamma[1], gamma[3]);
    }
    bdim = bb.total_dim();
    std::vector<std::vector<V>> out(free_gens.size(),
                                    std::vector<V>(bdim, ops.from_int(0)));
    for (std::size_t fi = 0; fi < free_gens.size(); ++fi)
        for (std::size_t ci = 0; ci < rows[fi].size(); ++ci)
            for (const auto& [t, v] : rows[fi][ci])
                out[fi][bb.class_offset(ci) + t] = v;
    return out;
}

}  // namespace

CuspidalSubspace cuspidal_subspace(ManinSymbolSpace space) {
    CuspidalSubspace cs(std::move(space));
    const ManinSymbolSpace& s = cs.space_;
    const std::size_t n = s.quotient_dimension();

    if (s.domain().is_rational()) {
        std::size_t bdim = 0;
        auto bd = boundary_matrix(s, QOps{}, bdim);
        // clear denominators column-irrelevantly: kernel is unchanged
        IntegerMatrix bd_int(n, bdim);
        mpz_class den = 1;
        for (const auto& row : bd)
            for (const mpq_class& q : row)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
                        q.get_den().get_mpz_t());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < bdim; ++j)
                bd_int.at(i, j) =
                    bd[i][j].get_num() * (den / bd[i][j].get_den());

        // lattice of the projection image, then its boundary kernel
        HnfResult h = exactint::hnf(s.projection_num());
        if (h.rank != n) fail("cuspidal_subspace: projection lattice rank");
        IntegerMatrix a = h.h * bd_int;
        IntegerMatrix y = kernel_lattice(a);
        cs.lattice_ = exactint::hnf(y * h.h);
    } else {
        const PrimeField F = *s.domain().fp;
        std::size_t bdim = 0;
        auto bd = boundary_matrix(s, FpOps{F}, bdim);
        FpMatrix bd_fp(F, n, bdim);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < bdim; ++j) bd_fp.set(i, j, bd[i][j]);
        // left kernel: rows y with y * bd = 0
        ffalg::RrefResult r = ffalg::rref(bd_fp.transposed());
        std::vector<bool> is_pivot(n, false);
        for (std::size_t c : r.pivots) is_pivot[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < n; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        FpMatrix basis(F, free_cols.size(), n);
        for (std::size_t bi = 0; bi < free_cols.size(); ++bi) {
            basis.set(bi, free_cols[bi], 1);
            for (std::size_t pi = 0; pi < r.pivots.size(); ++pi)
                basis.set(bi, r.pivots[pi],
                          F.neg(r.matrix.at(pi, free_cols[bi])));
        }
        cs.basis_fp_ = std::move(basis);
        cs.basis_fp_free_cols_ = std::move(free_cols);
    }
    return cs;
}

std::size_t CuspidalSubspace::dimension() const {
    if (space_.domain().is_rational()) return lattice_->rank;
    return basis_fp_.rows();
}

const HnfResult& CuspidalSubspace::lattice() const {
    if (!lattice_) fail("lattice: subspace is not over Q");
    return *lattice_;
}

const FpMatrix& CuspidalSubspace::basis_fp() const {
    if (space_.domain().is_rational())
        fail("basis_fp: subspace is not over F_p");
    return basis_fp_;
}

const std::vector<std::size_t>& CuspidalSubspace::basis_fp_free_columns()
    const {
    return basis_fp_free_cols_;
}

// ---------------------------------------------------------------------
// Hecke operators

namespace {

struct HeilbronnTables {
    // per matrix: P1 image of each class (-1 when the image leaves P1)
    std::vector<std::vector<long>> img;
    // per matrix: (k-1)^2 monomial substitution table
    std::vector<std::vector<std::int64_t>> mono;
    std::int64_t max_mono = 0;
};

HeilbronnTables build_tables(const ManinSymbolSpace& s,
                             const std::vector<Mat22>& ms) {
    HeilbronnTables t;
    const int kk = static_cast<int>(s.weight()) - 2;
    const std::size_t P = s.p1().size();
    t.img.reserve(ms.size());
    t.mono.reserve(ms.size());
    for (const Mat22& h : ms) {
        std::vector<long> img(P);
        for (std::size_t x = 0; x < P; ++x) {
            const P1Element e = s.p1().at(x);
            img[x] = s.p1().index_of(
                static_cast<std::int64_t>(e.c) * h[0] + e.d * h[2],
                static_cast<std::int64_t>(e.c) * h[1] + e.d * h[3]);
        }
        std::vector<std::int64_t> mono = monomial_action_table(h, kk);
        for (std::int64_t v : mono)
            t.max_mono = std::max(t.max_mono, v < 0 ? -v : v);
        t.img.push_back(std::move(img));
        t.mono.push_back(std::move(mono));
    }
    return t;
}

// One row of T over Q in 64-bit arithmetic; nullopt on (anticipated)
// overflow, in which case the caller redoes the row exactly.
std::optional<std::vector<mpz_class>> hecke_row_q_fast(
    const ManinSymbolSpace& s, const HeilbronnTables& t,
    const std::vector<std::int64_t>& pi64, std::int64_t max_pi,
    const std::vector<mpz_class>& basis_row) {
    const std::size_t P = s.p1().size();
    const std::size_t M = static_cast<std::size_t>(s.weight()) - 1;
    const std::size_t G = s.generator_count();
    const std::size_t n = s.quotient_dimension();
    const auto& free_gens = s.free_generators();

    std::int64_t maxv = 0;
    std::vector<std::int64_t> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!mpz_fits_slong_p(basis_row[j].get_mpz_t())) return std::nullopt;
        v[j] = basis_row[j].get_si();
        maxv = std::max(maxv, v[j] < 0 ? -v[j] : v[j]);
    }
    // bound on an entry of w: each (support generator, matrix) pair adds
    // one term of size at most max_mono * maxv
    const double wbound = static_cast<double>(t.img.size()) *
                          static_cast<double>(n) *
                          static_cast<double>(t.max_mono) *
                          static_cast<double>(maxv);
    if (wbound > 2.0e18) return std::nullopt;

    std::vector<std::int64_t> w(G, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (v[j] == 0) continue;
        const std::size_t g = free_gens[j];
        const std::size_t i = g / P, x = g % P;
        for (std::size_t m = 0; m < t.img.size(); ++m) {
            const long y = t.img[m][x];
            if (y < 0) continue;
            const std::int64_t* row = &t.mono[m][i * M];
            for (std::size_t jm = 0; jm < M; ++jm) {
                if (row[jm] == 0) continue;
                w[jm * P + static_cast<std::size_t>(y)] += row[jm] * v[j];
            }
        }
    }
    std::int64_t maxw = 0;
    for (std::int64_t x : w) maxw = std::max(maxw, x < 0 ? -x : x);
    const double pbound = static_cast<double>(G) *
                          static_cast<double>(maxw) *
                          static_cast<double>(max_pi);
    if (pbound > 2.0e18) return std::nullopt;

    std::vector<std::int64_t> acc(n, 0);
    for (std::size_t g = 0; g < G; ++g) {
        if (w[g] == 0) continue;
        const std::int64_t wg = w[g];
        const std::int64_t* prow = &pi64[g * n];
        for (std::size_t c = 0; c < n; ++c) acc[c] += wg * prow[c];
    }
    std::vector<mpz_class> out(n);
    for (std::size_t c = 0; c < n; ++c) out[c] = static_cast<long>(acc[c]);
    return out;
}

// Exact version of the row computation.
std::vector<mpz_class> hecke_row_q_exact(
    const ManinSymbolSpace& s, const HeilbronnTables& t,
    const std::vector<mpz_class>& basis_row) {
    const std::size_t P = s.p1().size();
    const std::size_t M = static_cast<std::size_t>(s.weight()) - 1;
    const std::size_t G = s.generator_count();
    const std::size_t n = s.quotient_dimension();
    const auto& free_gens = s.free_generators();
    const IntegerMatrix& pi = s.projection_num();

    std::vector<mpz_class> w(G, mpz_class(0));
    for (std::size_t j = 0; j < n; ++j) {
        if (basis_row[j] == 0) continue;
        const std::size_t g = free_gens[j];
        const std::size_t i = g / P, x = g % P;
        for (std::size_t m = 0; m < t.img.size(); ++m) {
            const long y = t.img[m][x];
            if (y < 0) continue;
            const std::int64_t* row = &t.mono[m][i * M];
            for (std::size_t jm = 0; jm < M; ++jm) {
                if (row[jm] == 0) continue;
                mpz_class c = basis_row[j] * static_cast<long>(row[jm]);
                w[jm * P + static_cast<std::size_t>(y)] += c;
            }
        }
    }
    std::vector<mpz_class> acc(n, mpz_class(0));
    for (std::size_t g = 0; g < G; ++g) {
        if (w[g] == 0) continue;
        for (std::size_t c = 0; c < n; ++c)
            mpz_addmul(acc[c].get_mpz_t(), w[g].get_mpz_t(),
                       pi.at(g, c).get_mpz_t());
    }
    return acc;
}

// Solves W = sum_j y_j (den * basis_j) by back-substitution along the
// HNF pivots; every division must be exact (the lattice is stable).
std::vector<mpz_class> solve_in_lattice(const HnfResult& lat,
                                        const mpz_class& den,
                                        std::vector<mpz_class> W) {
    const std::size_t c = lat.rank;
    std::vector<mpz_class> y(c);
    for (std::size_t j = 0; j < c; ++j) {
        const mpz_class d = den * lat.h.at(j, lat.pivots[j]);
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(),
                    W[lat.pivots[j]].get_mpz_t(), d.get_mpz_t());
        if (r != 0)
            fail("hecke_operator: image not in the cuspidal lattice");
        y[j] = q;
        if (q != 0) {
            mpz_class qd = q * den;
            for (std::size_t t = 0; t < W.size(); ++t)
                mpz_submul(W[t].get_mpz_t(), qd.get_mpz_t(),
                           lat.h.at(j, t).get_mpz_t());
        }
    }
    for (const mpz_class& x : W)
        if (x != 0)
            fail("hecke_operator: image not in the cuspidal lattice");
    return y;
}

IntegerMatrix hecke_prime_q_impl(const ManinSymbolSpace& s,
                                 const HnfResult& lat,
                                 const std::vector<Mat22>& ms) {
    const std::size_t n = s.quotient_dimension();
    const std::size_t c = lat.rank;
    HeilbronnTables t = build_tables(s, ms);

    // word-size copy of the projection numerators
    const IntegerMatrix& pi = s.projection_num();
    std::vector<std::int64_t> pi64;
    std::int64_t max_pi = 0;
    bool pi_fits = mpz_fits_slong_p(pi.max_abs().get_mpz_t()) != 0;
    if (pi_fits) {
        pi64.resize(pi.rows() * n);
        for (std::size_t g = 0; g < pi.rows(); ++g)
            for (std::size_t j = 0; j < n; ++j) {
                pi64[g * n + j] = pi.at(g, j).get_si();
                max_pi = std::max(max_pi, pi64[g * n + j] < 0
                                              ? -pi64[g * n + j]
                                              : pi64[g * n + j]);
            }
    }

    IntegerMatrix op(c, c);
    std::vector<mpz_class> basis_row(n);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < n; ++j) basis_row[j] = lat.h.at(i, j);
        std::optional<std::vector<mpz_class>> W;
        if (pi_fits)
            W = hecke_row_q_fast(s, t, pi64, max_pi, basis_row);
        if (!W) W = hecke_row_q_exact(s, t, basis_row);
        std::vector<mpz_class> y =
            solve_in_lattice(lat, s.projection_den(), std::move(*W));
        for (std::size_t j = 0; j < c; ++j) op.at(i, j) = std::move(y[j]);
    }
    return op;
}

FpMatrix hecke_prime_fp_impl(const ManinSymbolSpace& s, const FpMatrix& basis,
                             const std::vector<std::size_t>& free_cols,
                             const std::vector<Mat22>& ms) {
    const PrimeField F = *s.domain().fp;
    const std::size_t P = s.p1().size();
    const std::size_t M = static_cast<std::size_t>(s.weight()) - 1;
    const std::size_t G = s.generator_count();
    const std::size_t n = s.quotient_dimension();
    const std::size_t c = basis.rows();
    const auto& free_gens = s.free_generators();
    const FpMatrix& pi = s.projection_fp();

    HeilbronnTables t = build_tables(s, ms);
    // reduce substitution tables mod p once
    std::vector<std::vector<std::uint32_t>> mono_p(t.mono.size());
    for (std::size_t m = 0; m < t.mono.size(); ++m) {
        mono_p[m].resize(t.mono[m].size());
        for (std::size_t i = 0; i < t.mono[m].size(); ++i)
            mono_p[m][i] = F.reduce(t.mono[m][i]);
    }

    FpMatrix op(F, c, c);
    std::vector<std::uint32_t> w(G), acc(n), coords;
    for (std::size_t i = 0; i < c; ++i) {
        std::fill(w.begin(), w.end(), 0);
        for (std::size_t j = 0; j < n; ++j) {
            const std::uint32_t vj = basis.at(i, j);
            if (vj == 0) continue;
            const std::size_t g = free_gens[j];
            const std::size_t mi = g / P, x = g % P;
            for (std::size_t m = 0; m < t.img.size(); ++m) {
                const long y = t.img[m][x];
                if (y < 0) continue;
                const std::uint32_t* row = &mono_p[m][mi * M];
                for (std::size_t jm = 0; jm < M; ++jm) {
                    if (row[jm] == 0) continue;
                    auto& dst = w[jm * P + static_cast<std::size_t>(y)];
                    dst = F.add(dst, F.mul(row[jm], vj));
                }
            }
        }
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t g = 0; g < G; ++g) {
            if (w[g] == 0) continue;
            const std::uint32_t* prow = pi.row(g);
            for (std::size_t cc = 0; cc < n; ++cc)
                acc[cc] = F.add(acc[cc], F.mul(w[g], prow[cc]));
        }
        if (!ffalg::solve_in_rref_basis(basis, free_cols, acc.data(), coords))
            fail("hecke_operator: image not in the mod-p cuspidal space");
        for (std::size_t j = 0; j < c; ++j) op.set(i, j, coords[j]);
    }
    return op;
}

std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.emplace_back(p, e);
        }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

HeckeOperatorMatrix hom_mul(const HeckeOperatorMatrix& a,
                            const HeckeOperatorMatrix& b, long n) {
    if (a.matrix.index() == 0)
        return HeckeOperatorMatrix{n, a.z() * b.z()};
    return HeckeOperatorMatrix{n, a.fp() * b.fp()};
}

}  // namespace

HeckeOperatorMatrix CuspidalSubspace::hecke_prime(long ell) const {
    const std::vector<Mat22> ms =
        heilbronn_cremona(static_cast<std::uint32_t>(ell));
    if (space_.domain().is_rational())
        return HeckeOperatorMatrix{ell,
                                   hecke_prime_q_impl(space_, *lattice_, ms)};
    return HeckeOperatorMatrix{
        ell, hecke_prime_fp_impl(space_, basis_fp_, basis_fp_free_cols_, ms)};
}

HeckeOperatorMatrix CuspidalSubspace::compute(long n) const {
    const std::size_t c = dimension();
    if (n == 1) {
        if (space_.domain().is_rational())
            return HeckeOperatorMatrix{1, IntegerMatrix::identity(c)};
        return HeckeOperatorMatrix{
            1, FpMatrix::identity(*space_.domain().fp, c)};
    }
    const auto factors = factorize(n);
    if (factors.size() > 1) {
        // T_{mn} = T_m T_n for coprime m, n
        long m = 1;
        for (int e = 0; e < factors[0].second; ++e) m *= factors[0].first;
        return hom_mul(hecke_operator(m), hecke_operator(n / m), n);
    }
    const long ell = factors[0].first;
    const int r = factors[0].second;
    if (r == 1) return hecke_prime(ell);
    if (space_.level() % ell == 0)
        return hom_mul(hecke_operator(ell), hecke_operator(n / ell), n);
    // T_{l^r} = T_l T_{l^(r-1)} - l^(k-1) T_{l^(r-2)}
    HeckeOperatorMatrix t1 =
        hom_mul(hecke_operator(ell), hecke_operator(n / ell), n);
    const HeckeOperatorMatrix& t2 = hecke_operator(n / (ell * ell));
    if (space_.domain().is_rational()) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(ell),
                      static_cast<unsigned long>(space_.weight() - 1));
        IntegerMatrix m = t1.z();
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                mpz_submul(m.at(i, j).get_mpz_t(), scale.get_mpz_t(),
                           t2.z().at(i, j).get_mpz_t());
        return HeckeOperatorMatrix{n, std::move(m)};
    }
    const PrimeField F = *space_.domain().fp;
    const std::uint32_t scale =
        F.pow(F.reduce(ell), static_cast<std::uint64_t>(space_.weight() - 1));
    return HeckeOperatorMatrix{n, t1.fp() - t2.fp().scaled(scale)};
}

HeckeOperatorMatrix CuspidalSubspace::hecke_operator(long n) const {
    if (n < 1)
        throw std::invalid_argument("hecke_operator: index must be >= 1");
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->ops.find(n);
        if (it != cache_->ops.end()) return it->second;
    }
    HeckeOperatorMatrix m = compute(n);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->ops.try_emplace(n, std::move(m)).first->second;
}

HeckeOperatorMatrix hecke_operator(const CuspidalSubspace& cusp, long n) {
    return cusp.hecke_operator(n);
}

HeckeOperatorMatrix hecke_prime_with_matrices(const CuspidalSubspace& cusp,
                                              long ell,
                                              const std::vector<Mat22>& ms) {
    const ManinSymbolSpace& s = cusp.space();
    if (s.domain().is_rational())
        return HeckeOperatorMatrix{
            ell, hecke_prime_q_impl(s, cusp.lattice(), ms)};
    return HeckeOperatorMatrix{
        ell, hecke_prime_fp_impl(s, cusp.basis_fp(),
                                 cusp.basis_fp_free_columns(), ms)};
}

}  // namespace modsym
}  // namespace heckestat
