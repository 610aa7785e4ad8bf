#ifndef LCL_CHARACTERS_HPP
#define LCL_CHARACTERS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "lcl/arith.hpp"

namespace lcl {

// Weight choice c(n) appearing in the twisted sums.
enum class WeightChoice { liouville, mobius, unit };

double weight_value(const FactorSieve& sieve, WeightChoice c, std::uint64_t n);

// Dirichlet characters mod an odd prime r, indexed against the smallest
// primitive root g: chi_j(n) = exp(2*pi*i*j*ind(n)/(r-1)), chi_j(n) = 0 when
// r | n.  j = 0 is the principal character.
struct CharacterTable {
    std::uint64_t r = 0;
    std::uint64_t g = 0;             // smallest primitive root
    std::uint64_t order = 0;         // r - 1
    std::vector<std::uint32_t> ind;  // ind[n] for n in [1, r-1]; ind[1] = 0

    std::complex<double> chi(std::uint64_t j, std::uint64_t n) const;
    std::uint32_t index_of(std::uint64_t n) const;  // discrete log of n mod r, requires r∤n
};

CharacterTable build_character_table(std::uint64_t r);

enum class TwistPath { dft, naive };

// Entry j holds sum_{n<=x} c(n) chi_j(n).  The DFT path buckets c(n) by
// discrete log and transforms once; the naive path evaluates every character
// directly and serves as the reference.
std::vector<std::complex<double>> all_twisted_sums(const CharacterTable& table, double x,
                                                   WeightChoice c, const FactorSieve& sieve,
                                                   TwistPath path = TwistPath::dft);

struct AbsMoment {
    double over_all;           // (1/(r-1)) sum_j |A_j|^{2q}
    double over_nonprincipal;  // (1/(r-2)) sum_{j != 0} |A_j|^{2q}
};

AbsMoment avg_abs_moment(const CharacterTable& table, double x, double q, WeightChoice c,
                         const FactorSieve& sieve);

struct TwistedMomentResult {
    std::uint64_t m1 = 0, m2 = 0;
    double x = 0;
    std::uint64_t r = 0;
    WeightChoice c = WeightChoice::liouville;
    std::complex<double> value;
};

enum class MomentPath { dft, naive, congruence };

// E_chi chi(m1) conj(chi(m2)) |sum_{n<=x} c(n) chi(n)|^2, averaged over all
// r-1 characters.  The dft/naive paths average over j; the congruence path
// evaluates sum over n1,n2 <= x with r∤n1n2 and m1*n1 ≡ m2*n2 (mod r), which
// equals the same quantity by exact character orthogonality.
TwistedMomentResult twisted_second_moment_deterministic(const CharacterTable& table,
                                                        std::uint64_t m1, std::uint64_t m2,
                                                        double x, WeightChoice c,
                                                        const FactorSieve& sieve,
                                                        MomentPath path = MomentPath::dft);

struct ApSumResult {
    double direct;                    // sum_{n<=x, n≡a (mod r)} c(n)
    double decomposition;             // (1/(r-1)) sum_j conj(chi_j(a)) A_j, when gcd(a,r)=1
    bool decomposition_checked;       // false when r | a (identity needs gcd(a,r)=1)
};

// Partial sum of c over the progression a mod r, with the orthogonality
// decomposition recomputation asserted to 1e-6 absolute when gcd(a,r)=1.
ApSumResult ap_progression_sum(double x, const CharacterTable& table, std::int64_t a,
                               WeightChoice c, const FactorSieve& sieve);

}  // namespace lcl

#endif
