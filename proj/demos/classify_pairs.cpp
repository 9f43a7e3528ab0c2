// Classify a few tangent 2-planes: one from each branch of the trichotomy.

#include <grasshopf/random.hpp>
#include <grasshopf/surfaces.hpp>

#include <iostream>

using namespace ghf;

namespace {

void show(const char* label, const CMat& X, const CMat& Y) {
  std::cout << label << ": ";
  try {
    const StarScalars s = check_star(X, Y);
    std::cout << to_string(classify(X, Y)) << "  (lambda=" << s.lambda << ", mu=" << s.mu
              << ")\n";
  } catch (const StarViolation& e) {
    std::cout << "conformality violated\n";
  }
}

}  // namespace

int main() {
  Rng rng(7);

  const CMat X = random_star_X(rng, 2, 3);
  show("Y = iX (complex line)   ", X, CMat(cxd(0, 1) * X));

  const auto flat = random_flat_pair(rng, 2, 4);
  show("orthonormal real pair   ", flat.first, flat.second);

  CMat Xn = CMat::Zero(3, 2), Yn = CMat::Zero(3, 2);
  Xn.topLeftCorner(2, 2) = CMat::Identity(2, 2);
  Yn(2, 0) = 1.0;  // Y*Y = diag(1, 0) is not scalar
  show("rank-deficient Gram     ", Xn, Yn);
  return 0;
}
