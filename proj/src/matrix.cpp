#include "giwa/matrix.hpp"

namespace giwa {

BigInt banded_spd_determinant(const SymmetricSparse& matrix, Index w) {
  const Index n = matrix.size;
  if (n == 0) return BigInt(1);
  w = std::clamp<Index>(w, 0, n - 1);
  const Index slots = w + 1;

  // window(slot(i), slot(j)) holds the current Bareiss value of entry (i, j).
  BigMatrix window = BigMatrix::Zero(slots, slots);
  auto slot = [slots](Index i) { return i % slots; };

  auto load = [&](Index i, Index first, const BigInt& scale) {
    const Index si = slot(i);
    for (Index j = first; j <= i; ++j) {
      window(si, slot(j)) = 0;
      window(slot(j), si) = 0;
    }
    for (const auto& [j, value] : matrix.rows[i]) {
      if (j < first || j > i) continue;
      BigInt v = value * scale;
      window(slot(j), si) = v;
      window(si, slot(j)) = std::move(v);
    }
  };

  const BigInt one(1);
  for (Index i = 0; i <= std::min(w, n - 1); ++i) load(i, 0, one);

  BigInt previous(1);
  BigInt t;
  for (Index k = 0; k < n; ++k) {
    if (k > 0 && k + w < n) load(k + w, k, previous);
    const BigInt pivot = window(slot(k), slot(k));
    if (pivot == 0) throw std::domain_error("banded_spd_determinant: vanishing pivot (matrix is not positive definite)");
    if (k == n - 1) return pivot;

    const Index last = std::min(k + w, n - 1);
    const Index sk = slot(k);
    for (Index i = k + 1; i <= last; ++i) {
      const Index si = slot(i);
      for (Index j = i; j <= last; ++j) {
        const Index sj = slot(j);
        t = window(si, sj) * pivot;
        t -= window(si, sk) * window(sk, sj);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
        window(si, sj) = t;
        if (sj != si) window(sj, si) = t;
      }
    }
    previous = pivot;
  }
  return previous;  // unreachable for n >= 1
}

}  // namespace giwa
