#include "lamcm/whittaker.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lamcm {

SPolynomial operator+(const SPolynomial& a, const SPolynomial& b) {
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.at((long)i) + b.at((long)i);
    return SPolynomial(std::move(c));
}

SPolynomial operator-(const SPolynomial& a, const SPolynomial& b) {
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.at((long)i) - b.at((long)i);
    return SPolynomial(std::move(c));
}

SPolynomial operator*(const SPolynomial& a, const SPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return SPolynomial();
    std::vector<Rat> c(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return SPolynomial(std::move(c));
}

Rat value_at_0(const SRational& w) {
    Rat d = w.den(Rat(1));
    if (d == 0) throw std::domain_error("value_at_0: pole at s = 0");
    return w.num(Rat(1)) / d;
}

Rat derivative_at_0(const SRational& w) {
    Rat d = w.den(Rat(1));
    if (d == 0) throw std::domain_error("derivative_at_0: pole at s = 0");
    // d/ds f = -log q * X * (N'D - N D')/D^2
    Rat np = w.num.derivative()(Rat(1));
    Rat dp = w.den.derivative()(Rat(1));
    Rat n = w.num(Rat(1));
    return -(np * d - n * dp) / (d * d);
}

namespace {

// (1 - X) * sum_{0 <= n <= top} q^n X^n; empty for top < 0
SPolynomial truncated_unit_block(const Int& q, long top) {
    if (top < 0) return SPolynomial();
    std::vector<Rat> g(size_t(top + 1));
    Rat qq(q);
    Rat pw(1);
    for (long n = 0; n <= top; ++n, pw *= qq) g[size_t(n)] = pw;
    SPolynomial geo(std::move(g));
    SPolynomial oneMinusX({Rat(1), Rat(-1)});
    return oneMinusX * geo;
}

SPolynomial q_monomial(const Int& q, long k) {
    return SPolynomial::monomial(pow_rat(Rat(q), k), k);
}

} // namespace

SRational whittaker_closed(const WhittakerParams& p) {
    const Int& q = p.q;
    if (p.o_beta < 0) throw std::invalid_argument("whittaker_closed: o(beta) must be >= 0");

    if (!p.mu_zero) {
        if (p.a_mu_t < 0) return SRational::poly(SPolynomial(), q); // W = 0
        if (p.ext != ExtType::Ramified) {
            long oEbm = p.o_beta + p.o_E_mu; // o_E(beta mu)
            if (oEbm < 0)
                throw std::invalid_argument("whittaker_closed: o_E(beta mu) < 0 is outside the lattice-dual range");
            if (p.a_mu_t < oEbm) return SRational::poly(truncated_unit_block(q, p.a_mu_t), q);
            return SRational::poly(truncated_unit_block(q, oEbm - 1) + q_monomial(q, oEbm), q);
        }
        // ramified
        if (p.f < 1) throw std::invalid_argument("whittaker_closed: ramified case needs f >= 1");
        long mu_f = p.o_E_mu + p.f;
        if (mu_f <= 0) {
            long a_cap = p.o_beta + (long)std::floor((double)mu_f / 2.0);
            if (a_cap < 0)
                throw std::invalid_argument("whittaker_closed: o(beta)+[(o_E(mu)+f)/2] < 0 is outside the dual range");
            if (p.a_mu_t < a_cap) return SRational::poly(truncated_unit_block(q, p.a_mu_t), q);
            return SRational::poly(truncated_unit_block(q, a_cap - 1) + q_monomial(q, a_cap), q);
        }
        // second regime
        if (p.a_mu_t < p.o_beta) return SRational::poly(truncated_unit_block(q, p.a_mu_t), q);
        if (!p.inner_sums)
            throw std::domain_error("whittaker_closed: ramified second regime needs the inner character sums "
                                    "(supply them from a p-adic instantiation)");
        if ((long)p.inner_sums->size() != mu_f)
            throw std::invalid_argument("whittaker_closed: inner sum list must cover o(beta)+1 .. o(beta)+o_E(mu)+f");
        SPolynomial acc = truncated_unit_block(q, p.o_beta - 1) + q_monomial(q, p.o_beta);
        Rat qb = pow_rat(Rat(q), p.o_beta);
        for (long idx = 0; idx < mu_f; ++idx) {
            long n = p.o_beta + 1 + idx;
            acc = acc + SPolynomial::monomial(qb * (*p.inner_sums)[size_t(idx)], n);
        }
        return SRational::poly(acc, q);
    }

    // mu = 0
    if (!p.t_zero && p.o_t < 0) return SRational::poly(SPolynomial(), q); // t outside O_F
    int chi_pi = (p.ext == ExtType::Split) ? 1 : -1;                      // unramified chi(pi)

    if (p.ext != ExtType::Ramified) {
        if (p.t_zero) {
            // (1-X) sum + q^ob X^ob L(s,chi)/L(s+1,chi)
            // L(s,chi) = (1 - chi(pi) X)^{-1}, L(s+1,chi) = (1 - chi(pi) X/q)^{-1}
            SPolynomial lnum({Rat(1), Rat(-chi_pi, 1) / Rat(q)}); // 1/L(s+1)
            SPolynomial lden({Rat(1), Rat(-chi_pi, 1)});          // 1/L(s)
            SPolynomial head = truncated_unit_block(q, p.o_beta - 1);
            // head + q^ob X^ob * lnum/lden  ->  (head*lden + q^ob X^ob lnum)/lden
            return SRational(head * lden + q_monomial(q, p.o_beta) * lnum, lden, q);
        }
        if (p.o_t < p.o_beta) return SRational::poly(truncated_unit_block(q, p.o_t), q);
        long otb = p.o_t - p.o_beta;
        SPolynomial lnum({Rat(1), Rat(-chi_pi, 1) / Rat(q)}); // 1/L(s+1,chi)
        std::vector<Rat> geo(size_t(otb + 1));
        for (long n = 0; n <= otb; ++n) geo[size_t(n)] = Rat((n % 2 == 0) ? 1 : chi_pi);
        SPolynomial chi_geo(std::move(geo));
        SPolynomial tail = q_monomial(q, p.o_beta) * lnum * chi_geo;
        return SRational::poly(truncated_unit_block(q, p.o_beta - 1) + tail, q);
    }

    // ramified, mu = 0
    if (p.t_zero)
        return SRational::poly(truncated_unit_block(q, p.o_beta - 1) + q_monomial(q, p.o_beta), q);
    if (p.o_t < p.o_beta) return SRational::poly(truncated_unit_block(q, p.o_t), q);
    if (p.chi_t_over_beta != 1 && p.chi_t_over_beta != -1)
        throw std::invalid_argument("whittaker_closed: ramified mu=0 with t != 0 needs chi(t/beta)");
    if (p.f < 1) throw std::invalid_argument("whittaker_closed: ramified case needs f >= 1");
    long shift = p.o_t - p.o_beta + p.f;
    SPolynomial main = q_monomial(q, p.o_beta) *
                       (SPolynomial::constant(Rat(1)) + SPolynomial::monomial(Rat(p.chi_t_over_beta), shift));
    return SRational::poly(main + truncated_unit_block(q, p.o_beta - 1), q);
}

GaussIntegralValue gauss_integral(long o_E_mu, long o_b, ExtType ext, long f) {
    GaussIntegralValue v;
    if (o_E_mu >= 0) { // mu in O_E: I_0 branches
        if (o_b >= 0) { v.is_one = true; return v; }
        if (ext != ExtType::Ramified) { v.chi_norm_branch = true; return v; }
        if (-f < o_b) { v.zero = true; return v; }
        v.ramified_root_branch = true;
        return v;
    }
    if (ext != ExtType::Ramified) {
        // psi(b mu mubar) char(O_E)(b mu)
        if (o_b + o_E_mu < 0) { v.zero = true; return v; }
        v.psi_phase_branch = true;
        return v;
    }
    long m = -o_b;
    if (m <= 0) { v.psi_phase_branch = true; return v; } // char(d^{-1})(b mu) may still vanish
    if (m > o_E_mu + f) { v.zero = true; return v; }
    v.psi_phase_branch = true; // finite character sum branch
    return v;
}

ConductorShift conductor_shift(long n_psi) {
    return ConductorShift{-n_psi, n_psi, -n_psi};
}

LatticeRescale lattice_rescale(long c, ExtType ext) {
    long e = (ext == ExtType::Ramified) ? 2 : 1;
    if ((2 * c) % e != 0) throw std::invalid_argument("lattice_rescale: shift not integral in F");
    return LatticeRescale{2 * c / e, c};
}

// ---------------------------------------------------------------------
// p-adic side

long val_p(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("val_p of zero");
    return valuation(x, p);
}

namespace {
constexpr long kInfVal = 1L << 40;

long val_p_or_inf(const Rat& x, const Int& p) { return x == 0 ? kInfVal : valuation(x, p); }

// Legendre symbol of a rational unit mod odd p
int legendre_unit(const Rat& u, const Int& p) {
    Int num = u.get_num() % p, den = u.get_den() % p;
    if (num < 0) num += p;
    if (den < 0) den += p;
    Int deninv;
    if (!mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()))
        throw std::domain_error("legendre_unit: not a unit");
    Int r = num * deninv % p;
    return mpz_kronecker(r.get_mpz_t(), p.get_mpz_t());
}

// odd rational unit mod 8
long unit_mod8(const Rat& u) {
    Int num = u.get_num() % 8, den = u.get_den() % 8;
    if (num < 0) num += 8;
    if (den < 0) den += 8;
    // inverse of odd den mod 8 is den itself (odd^2 = 1 mod 8)
    Int r = num * den % 8;
    return r.get_si();
}

// Hilbert symbol (a,b)_p
int hilbert(const Rat& a, const Rat& b, const Int& p) {
    long alpha = val_p(a, p), beta = val_p(b, p);
    Rat u = a / pow_rat(Rat(p), alpha);
    Rat w = b / pow_rat(Rat(p), beta);
    if (p != 2) {
        int s = 1;
        if ((alpha % 2 != 0) && (beta % 2 != 0)) {
            Int pm4 = (p - 1) / 2;
            if (pm4 % 2 != 0) s = -s; // (-1)^{(p-1)/2}
        }
        if (beta % 2 != 0 && legendre_unit(u, p) == -1) s = -s;
        if (alpha % 2 != 0 && legendre_unit(w, p) == -1) s = -s;
        return s;
    }
    long u8 = unit_mod8(u), w8 = unit_mod8(w);
    long eps_u = ((u8 - 1) / 2) % 2, eps_w = ((w8 - 1) / 2) % 2;
    long om_u = ((u8 * u8 - 1) / 8) % 2, om_w = ((w8 * w8 - 1) / 8) % 2;
    long e = eps_u * eps_w + (alpha % 2) * om_w + (beta % 2) * om_u;
    return (e % 2 == 0) ? 1 : -1;
}

} // namespace

PadicField PadicField::split(const Int& p) { return PadicField{p, ExtType::Split, Int(0), 0, 1}; }

PadicField PadicField::inert(const Int& p) {
    if (p == 2) return PadicField{p, ExtType::Inert, Int(5), 0, 1};
    Int u(2);
    while (mpz_kronecker(u.get_mpz_t(), p.get_mpz_t()) != -1) ++u;
    return PadicField{p, ExtType::Inert, u, 0, 1};
}

PadicField PadicField::ramified(const Int& p, const Int& theta) {
    PadicField F{p, ExtType::Ramified, theta, 0, 2};
    long v = val_p(Rat(theta), p);
    if (p == 2) {
        if (v % 2 == 0) {
            long u8 = unit_mod8(Rat(theta) / pow_rat(Rat(2), v));
            if (u8 == 1) throw std::invalid_argument("ramified: theta is a square");
            if (u8 == 5) throw std::invalid_argument("ramified: theta generates the unramified extension");
        }
    } else if (v % 2 == 0) {
        throw std::invalid_argument("ramified: theta must have odd valuation for odd p");
    }
    if (v < 0 || v >= 2) throw std::invalid_argument("ramified: use a theta with v_p(theta) in {0,1}");
    // f = v_E(2) + v_E(omega) via norms: v_E(2) = v_p(4), v_E(omega) = v_p(theta)
    F.f = val_p(Rat(4), p) + v;
    return F;
}

int PadicField::chi(const Rat& x) const {
    if (ext == ExtType::Split) return 1;
    // basis element omega: sqrt(theta) scaled; the character only depends
    // on theta's square class
    Int th = theta;
    if (ext == ExtType::Inert && p == 2) th = 5;
    return hilbert(x, Rat(th), p);
}

namespace {

// quadratic data of the O_E basis {1, omega}: omega^2 = B omega - C
struct Basis {
    Rat B, C;
};

Basis basis_of(const PadicField& F) {
    if (F.ext == ExtType::Inert && F.p == 2) return {Rat(1), Rat(-1)}; // omega = (1+sqrt5)/2
    return {Rat(0), Rat(-F.theta)}; // omega = sqrt(theta)
}

} // namespace

Rat norm_E(const PadicField& F, const EElt& x) {
    if (F.ext == ExtType::Split) return x.a * x.b;
    Basis bs = basis_of(F);
    return x.a * x.a + bs.B * x.a * x.b + bs.C * x.b * x.b;
}

Rat trace_E(const PadicField& F, const EElt& x) {
    if (F.ext == ExtType::Split) return x.a + x.b;
    Basis bs = basis_of(F);
    return 2 * x.a + bs.B * x.b;
}

long val_E(const PadicField& F, const EElt& x) {
    if (x.a == 0 && x.b == 0) return kInfVal;
    if (F.ext == ExtType::Ramified) return val_p_or_inf(norm_E(F, x), F.p);
    return std::min(val_p_or_inf(x.a, F.p), val_p_or_inf(x.b, F.p));
}

namespace {

// conjugate: omega -> B - omega
EElt conj_E(const PadicField& F, const EElt& x) {
    if (F.ext == ExtType::Split) return {x.b, x.a};
    Basis bs = basis_of(F);
    return {x.a + bs.B * x.b, -x.b};
}

EElt mul_E(const PadicField& F, const EElt& x, const EElt& y) {
    if (F.ext == ExtType::Split) return {x.a * y.a, x.b * y.b};
    Basis bs = basis_of(F);
    return {x.a * y.a - bs.C * x.b * y.b, x.a * y.b + x.b * y.a + bs.B * x.b * y.b};
}

// G(m) = integral over O_F^* of psi(p^{-m} u b) db, depending only on
// m (= conductor excess); computed by an explicit complex character sum
// and rounded to denominator p^max(m,1).
class UnitIntegralCache {
  public:
    Rat get(const Int& p, long m) {
        if (m <= 0) {
            return Rat(p - 1) / Rat(p); // vol(O^*): full positive mass
        }
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(p, m);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        double pd = p.get_d();
        double pm = std::pow(pd, (double)m);
        if (pm > 6.0e7) throw std::domain_error("unit integral: conductor too deep to sum");
        long pml = (long)llround(pm);
        long pl = (long)p.get_si();
        std::complex<double> s(0.0, 0.0);
        for (long b = 1; b < pml; ++b) {
            if (b % pl == 0) continue;
            double phase = 2.0 * M_PI * (double)b / pm;
            s += std::complex<double>(std::cos(phase), std::sin(phase));
        }
        // integral = sum / p^m; exact value has denominator p^m
        double scaled = s.real(); // imaginary part cancels
        if (std::abs(s.imag()) > 1e-6)
            throw std::runtime_error("unit integral: nonreal character sum");
        double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) > 1e-6)
            throw std::runtime_error("unit integral: rounding residual too large");
        Rat v = Rat(Int((long)rounded)) / Rat(pow_int(p, (unsigned long)m));
        cache_[key] = v;
        return v;
    }

  private:
    std::mutex mu_;
    std::map<std::pair<Int, long>, Rat> cache_;
};

UnitIntegralCache g_unit_integral;

struct Coset {
    EElt c;
    long j; // coset c + p^j O_E
};

// lower bound for v_p(y(x) - y(c)) on the coset, with y(x) = beta N(x) - t
long perturbation_bound(const PadicField& F, long o_beta, const EElt& c, long j) {
    const Int& p = F.p;
    long tr1, tr2;
    if (F.ext == ExtType::Split) {
        tr1 = val_p_or_inf(c.b, p); // coefficient of a1: beta * c2
        tr2 = val_p_or_inf(c.a, p);
    } else {
        EElt cb = conj_E(F, c);
        tr1 = val_p_or_inf(trace_E(F, mul_E(F, cb, EElt{Rat(1), Rat(0)})), p);
        tr2 = val_p_or_inf(trace_E(F, mul_E(F, cb, EElt{Rat(0), Rat(1)})), p);
    }
    long lin = std::min(tr1, tr2);
    long linb = (lin >= kInfVal) ? kInfVal : j + lin;
    long quad = 2 * j; // N(p^j x), N(x) integral on O_E
    return o_beta + std::min(linb, quad);
}

} // namespace

SRational whittaker_brute(const PadicField& F, long o_beta, const EElt& mu, const Rat& t,
                          long extra_terms) {
    const Int& p = F.p;
    Rat beta = pow_rat(Rat(p), o_beta);
    long o_mu = val_E(F, mu);
    long o_t = (t == 0) ? 4 : std::max(0L, val_p_or_inf(t, p));
    long n_stop = o_beta + F.f + o_t + (o_mu >= kInfVal ? 0 : std::labs(o_mu)) + 2;

    std::vector<Rat> J(size_t(n_stop + extra_terms + 1), Rat(0));
    // J(0) = char(O_F)(Q_beta(mu) - t)
    Rat alpha0 = beta * norm_E(F, mu) - t;
    J[0] = (alpha0 == 0 || valuation(alpha0, p) >= 0) ? Rat(1) : Rat(0);

    for (long n = 1; n <= n_stop + extra_terms; ++n) {
        // integrate G_n(y(x)) over x in mu + O_E by adaptive coset refinement
        Rat acc(0);
        std::vector<Coset> stack{{mu, 0}};
        while (!stack.empty()) {
            Coset cs = stack.back();
            stack.pop_back();
            Rat y = beta * norm_E(F, cs.c) - t;
            long vy = val_p_or_inf(y, p);
            long vpert = perturbation_bound(F, o_beta, cs.c, cs.j);
            bool leaf = false;
            long m = 0; // conductor excess n - v(y)
            if (vy < vpert) {
                leaf = true;
                m = n - vy;
            } else if (vpert >= n && vy >= n) {
                leaf = true;
                m = 0; // class <= 0: full unit mass
            }
            if (leaf) {
                Rat g = g_unit_integral.get(p, std::max(m, 0L));
                if (m > 0 && g == 0) continue;
                // vol of the coset: p^{-2j}
                acc += g / pow_rat(Rat(p), 2 * cs.j);
                continue;
            }
            if (cs.j > 8 * (n + o_beta + F.f + 8))
                throw std::runtime_error("whittaker_brute: refinement failed to terminate");
            long pl = (long)p.get_si();
            Rat step = pow_rat(Rat(p), cs.j);
            for (long s = 0; s < pl; ++s)
                for (long u = 0; u < pl; ++u)
                    stack.push_back({EElt{cs.c.a + step * s, cs.c.b + step * u}, cs.j + 1});
        }
        J[size_t(n)] = acc;
    }

    for (long n = n_stop + 1; n <= n_stop + extra_terms; ++n)
        if (J[size_t(n)] != 0 && t != 0)
            throw std::runtime_error("whittaker_brute: series did not terminate at the stated bound");

    std::vector<Rat> coeffs(size_t(n_stop + 1));
    Rat pw(1);
    for (long n = 0; n <= n_stop; ++n, pw *= Rat(p)) coeffs[size_t(n)] = J[size_t(n)] * pw;
    return SRational::poly(SPolynomial(std::move(coeffs)), p);
}

std::vector<Rat> ramified_inner_sums(const PadicField& F, long o_beta, const EElt& mu, const Rat& t) {
    if (F.ext != ExtType::Ramified)
        throw std::invalid_argument("ramified_inner_sums: field must be ramified");
    const Int& p = F.p;
    Rat beta = pow_rat(Rat(p), o_beta);
    long o_mu = val_E(F, mu);
    long range = o_mu + F.f;
    if (range <= 0) return {};
    std::vector<Rat> out;
    for (long idx = 1; idx <= range; ++idx) {
        long n = o_beta + idx;
        // a runs over O_E / pi_E^{idx}; enumerate via p-power boxes: the
        // quotient has p^idx elements; pi^idx O_E contains p^ceil(idx/2) O_E,
        // so representatives a + b omega with a mod p^k1, b mod p^k2 chosen
        // from the explicit ladder below cover it exactly once.
        long k = (idx + 1) / 2;
        long pl = (long)p.get_si();
        long count_a, count_b;
        if (idx % 2 == 0) { count_a = count_b = (long)std::llround(std::pow((double)pl, idx / 2.0)); }
        else {
            // pi^{2k-1} O = p^{k-1} pi O; reps: a mod p^k, b mod p^{k-1} when
            // v_E(omega) = 1, otherwise a mod p^{k-1}, b mod p^k
            count_a = (long)std::llround(std::pow((double)pl, (double)k));
            count_b = (long)std::llround(std::pow((double)pl, (double)(k - 1)));
            long v_omega = val_p_or_inf(Rat(F.theta), p); // v_E(omega) = v_p(N(omega))
            if (v_omega != 1) std::swap(count_a, count_b);
        }
        long c_n = 0, c_n1 = 0;
        for (long ia = 0; ia < count_a; ++ia)
            for (long ib = 0; ib < count_b; ++ib) {
                EElt x{mu.a + ia, mu.b + ib};
                Rat alpha = beta * norm_E(F, x) - t;
                long v = val_p_or_inf(alpha, p);
                if (v >= n) ++c_n;
                if (v >= n - 1) ++c_n1;
            }
        out.push_back(Rat(c_n) - Rat(c_n1) / Rat(p));
    }
    return out;
}

WhittakerParams params_from_instance(const PadicField& F, long o_beta, const EElt& mu, const Rat& t) {
    WhittakerParams P;
    P.q = F.p;
    P.ext = F.ext;
    P.f = F.f;
    P.o_beta = o_beta;
    long o_mu = val_E(F, mu);
    Rat beta = pow_rat(Rat(F.p), o_beta);
    if (o_mu >= 0) {
        P.mu_zero = true;
        P.t_zero = (t == 0);
        if (!P.t_zero) {
            P.o_t = val_p_or_inf(t, F.p);
            if (F.ext == ExtType::Ramified && P.o_t >= o_beta)
                P.chi_t_over_beta = F.chi(t / beta);
        }
    } else {
        P.mu_zero = false;
        P.o_E_mu = o_mu;
        Rat alpha = beta * norm_E(F, mu) - t;
        P.a_mu_t = (alpha == 0) ? kInfVal : valuation(alpha, F.p);
        if (F.ext == ExtType::Ramified && o_mu + F.f > 0 && P.a_mu_t >= o_beta)
            P.inner_sums = ramified_inner_sums(F, o_beta, mu, t);
    }
    return P;
}

} // namespace lamcm
