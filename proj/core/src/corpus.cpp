#include "apmeas/corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "apmeas/error.hpp"

namespace apmeas {

namespace {

// Explicit conversions keep the corpus identical across standard libraries.
struct Rng {
  std::mt19937_64 gen;
  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  long long integer(long long lo, long long hi) {
    return lo + static_cast<long long>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

PurePointPart random_atoms(Rng& r) {
  const auto n = r.integer(1, 20);
  std::vector<Atom> atoms;
  for (long long i = 0; i < n; ++i) {
    const double pos = static_cast<double>(r.integer(-255, 255)) / 32.0;
    const double rad = std::sqrt(r.uniform());
    const double arg = 2.0 * std::numbers::pi * r.uniform();
    atoms.push_back({pos, std::polar(rad, arg)});
  }
  return PurePointPart(std::move(atoms));
}

DensityPart random_density(Rng& r) {
  const auto cells = r.integer(1, 32);
  const auto first = r.integer(-16, 16 - cells);
  std::vector<cplx> samples;
  for (long long i = 0; i < cells; ++i) samples.push_back(2.0 * r.uniform() - 1.0);
  return DensityPart(0.5 * static_cast<double>(first), 0.5, std::move(samples));
}

SingularPart random_cantor(Rng& r) {
  const double len = static_cast<double>(r.integer(1, 28)) / 32.0;
  const double lo = static_cast<double>(r.integer(-255, static_cast<long long>(255 - 32 * len))) / 32.0;
  const double mass = r.uniform();
  // Fixed points lo and lo + len bound the attractor.
  std::vector<IfsMap> maps{{1.0 / 3, lo * 2.0 / 3.0, 0.5}, {1.0 / 3, (lo + len) * 2.0 / 3.0, 0.5}};
  return SingularPart({SingularPiece::from_ifs(std::move(maps), 6, mass)});
}

}  // namespace

std::vector<Measure> corpus(std::uint64_t seed, std::size_t size) {
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "corpus size must be >= 1");
  Rng r{std::mt19937_64(seed)};
  std::vector<Measure> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto kind = i % 4;
    PurePointPart pp;
    DensityPart ac;
    SingularPart sc;
    if (kind == 0 || kind == 3) pp = random_atoms(r);
    if (kind == 1 || kind == 3) ac = random_density(r);
    if (kind == 2 || kind == 3) sc = random_cantor(r);
    out.emplace_back(std::move(pp), std::move(ac), std::move(sc), std::nullopt);
  }
  return out;
}

}  // namespace apmeas
