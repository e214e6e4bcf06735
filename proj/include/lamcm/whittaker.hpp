#ifndef LAMCM_WHITTAKER_HPP
#define LAMCM_WHITTAKER_HPP

#include <optional>
#include <vector>

#include "lamcm/rational.hpp"

namespace lamcm {

// Polynomial in X = q^(-s) over the rationals
struct SPolynomial {
    std::vector<Rat> c; // ascending

    SPolynomial() = default;
    explicit SPolynomial(std::vector<Rat> cc) : c(std::move(cc)) { trim(); }
    static SPolynomial constant(const Rat& v) { return SPolynomial({v}); }
    static SPolynomial monomial(const Rat& v, long k) {
        std::vector<Rat> cc(size_t(k + 1), Rat(0));
        cc[size_t(k)] = v;
        return SPolynomial(std::move(cc));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return (long)c.size() - 1; }
    Rat at(long k) const { return (k >= 0 && k < (long)c.size()) ? c[size_t(k)] : Rat(0); }

    Rat operator()(const Rat& x) const {
        Rat v(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    }
    SPolynomial derivative() const {
        if (c.size() <= 1) return SPolynomial();
        std::vector<Rat> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = Rat((long)i) * c[i];
        return SPolynomial(std::move(d));
    }

    friend SPolynomial operator+(const SPolynomial& a, const SPolynomial& b);
    friend SPolynomial operator-(const SPolynomial& a, const SPolynomial& b);
    friend SPolynomial operator*(const SPolynomial& a, const SPolynomial& b);
    bool operator==(const SPolynomial& o) const { return c == o.c; }
};

// Rational function in X = q^(-s); q is carried alongside so values and
// derivatives at s = 0 can be reported exactly.
struct SRational {
    SPolynomial num;
    SPolynomial den; // nonzero; 1 by default
    Int q;

    SRational() : den(SPolynomial::constant(Rat(1))), q(2) {}
    SRational(SPolynomial n, SPolynomial d, Int qq) : num(std::move(n)), den(std::move(d)), q(std::move(qq)) {
        if (den.is_zero()) throw std::invalid_argument("SRational: zero denominator");
    }
    static SRational poly(SPolynomial n, Int qq) {
        return SRational(std::move(n), SPolynomial::constant(Rat(1)), std::move(qq));
    }

    bool pole_at_one() const { return den(Rat(1)) == 0; }
};

// value at s = 0 (X = 1); throws on a pole
Rat value_at_0(const SRational& w);
// derivative at s = 0 as the exact rational cofactor of log q
// (d/ds = -log(q) X d/dX)
Rat derivative_at_0(const SRational& w);

enum class ExtType { Split, Inert, Ramified };

// Parameters of the normalized local Whittaker function
// W_t(s, phi_mu) / (gamma(beta) vol(O_E, d_beta x)).
struct WhittakerParams {
    Int q = 2;                 // residue field size of F
    ExtType ext = ExtType::Inert;
    long f = 0;                // valuation of the different (ramified only)
    long o_beta = 0;           // o(beta) >= 0

    bool mu_zero = true;
    long o_E_mu = 0;           // mu != 0: o_E(mu), may be negative
    long a_mu_t = 0;           // mu != 0: a(mu,t) = o(beta mu mubar - t); < 0 encodes "not integral"

    bool t_zero = false;       // mu == 0 branch data
    long o_t = 0;              // o(t); o_t < 0 encodes t not in O_F
    int chi_t_over_beta = 0;   // ramified, mu == 0, t != 0: chi(t/beta) = +-1

    // ramified mu != 0 with o_E(mu)+f > 0 and a(mu,t) >= o(beta): inner
    // character sums S_n for n = o_beta+1 .. o_beta+o_E_mu+f, exact values
    std::optional<std::vector<Rat>> inner_sums;
};

// the closed form as an exact rational function of X = q^(-s)
SRational whittaker_closed(const WhittakerParams& p);

// generalized Gauss integral I_mu(b): closed-form descriptor
struct GaussIntegralValue {
    bool zero = false;
    bool is_one = false;
    bool chi_norm_branch = false;      // chi(b) |b|^{-1} (unramified)
    bool ramified_root_branch = false; // chi(b)|b|^{-1} q^{-f/2} gamma(W_1)
    bool psi_phase_branch = false;     // psi(b mu mubar) char(...)(b mu)
};

// classify by o_E(mu) (>= 0 meaning mu in O_E), o(b), extension type, f
GaussIntegralValue gauss_integral(long o_E_mu, long o_b, ExtType ext, long f);

// conductor-change and lattice-rescale parameter transforms
struct ConductorShift {
    long o_beta_shift;   // o(beta') = o(beta) + this
    long scale_half_pow; // W^psi = q^(scale_half_pow/2) * W^{psi'}_{t/a}
    long t_val_shift;    // o(t') = o(t) + this
};
ConductorShift conductor_shift(long n_psi);
// L = pi_E^c O_E: beta goes to pi_E^{2c} beta, mu to pi_E^c mu
struct LatticeRescale {
    long o_beta_shift;
    long o_E_mu_shift;
};
LatticeRescale lattice_rescale(long c, ExtType ext);

// ---------------------------------------------------------------------
// Brute force over F = Q_p: elements of the etale quadratic algebra E are
// pairs (a,b) meaning a + b*sqrt(theta) (field case) or (a,b) itself
// (split case).

struct PadicField {
    Int p;
    ExtType ext;
    Int theta;    // field case: E = Q_p(sqrt(theta)); split: unused
    long f;       // different valuation
    long ram_e;   // ramification index: 2 for ramified, else 1

    static PadicField split(const Int& p);
    static PadicField inert(const Int& p);               // theta = unit non-square
    static PadicField ramified(const Int& p, const Int& theta);

    // quadratic character chi_{E/F} on Q_p^* via the Hilbert symbol
    int chi(const Rat& x) const;
};

struct EElt {
    Rat a, b;
};

// valuations
long val_p(const Rat& x, const Int& p);                 // v_p, throws on 0
long val_E(const PadicField& F, const EElt& x);         // o_E, large sentinel for 0
Rat norm_E(const PadicField& F, const EElt& x);         // x xbar
Rat trace_E(const PadicField& F, const EElt& x);

// normalized Whittaker series sum_n J_mu(n) q^n X^n computed by numerical
// integration of the Gauss integrals (complex root-of-unity sums), with the
// coefficients rounded to denominator p^K and a residual check
SRational whittaker_brute(const PadicField& F, long o_beta, const EElt& mu, const Rat& t,
                          long extra_terms = 2);

// the inner character sums of the ramified second regime, computed exactly
std::vector<Rat> ramified_inner_sums(const PadicField& F, long o_beta, const EElt& mu, const Rat& t);

// parameters matching a concrete instantiation (for the closed-form side)
WhittakerParams params_from_instance(const PadicField& F, long o_beta, const EElt& mu, const Rat& t);

} // namespace lamcm

#endif
