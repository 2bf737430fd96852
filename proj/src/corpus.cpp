#include "weinstein/corpus.hpp"

#include <cmath>
#include <random>

#include "weinstein/transform.hpp"

namespace weinstein {

double bump_profile(double r) {
  const double t = r * r;
  return t < 1.0 ? std::exp(-1.0 / (1.0 - t)) : 0.0;
}

double corpus_gaussian_sigma(double extent) { return std::min(1.0, extent / 8.0); }

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

CorpusFunction gaussian_member(const WeinsteinParams& params, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_member: sigma must be positive");
  CorpusFunction g;
  g.name = "gaussian";
  const double inv = 1.0 / (2.0 * sigma * sigma);
  g.eval = [inv](const Point& x) { return std::exp(-x.norm2() * inv); };
  g.support_radius = 12.0 * sigma;
  g.profile = RadialProfile([inv](double r) { return std::exp(-r * r * inv); }, 12.0 * sigma, {}, true);
  const double power = 2.0 * params.alpha() + params.d() + 1.0;
  const double scale = std::pow(sigma, power);
  g.transform = [scale, sigma](const Point& lambda) {
    return scale * std::exp(-0.5 * sigma * sigma * lambda.norm2());
  };
  return g;
}

namespace {

// Bump of radius r centered at c plus its mirror image across x_d = 0.
struct EvenBump {
  Point center;
  double radius;
  double amplitude;

  double operator()(const Point& x) const {
    double lateral = 0.0;
    for (int i = 0; i + 1 < x.dim(); ++i) {
      const double t = x[i] - center[i];
      lateral += t * t;
    }
    const double up = x.last() - center.last();
    const double down = x.last() + center.last();
    const double inv = 1.0 / (radius * radius);
    return amplitude * (bump_profile(std::sqrt((lateral + up * up) * inv)) +
                        bump_profile(std::sqrt((lateral + down * down) * inv)));
  }
};

double bump_sum(const std::vector<EvenBump>& bumps, const Point& x) {
  double s = 0.0;
  for (const EvenBump& b : bumps) s += b(x);
  return s;
}

double reach(const std::vector<EvenBump>& bumps) {
  double r = 0.0;
  for (const EvenBump& b : bumps) r = std::max(r, b.center.norm() + b.radius);
  return r;
}

}  // namespace

std::vector<CorpusFunction> build_corpus(const WeinsteinParams& params, double extent, std::uint64_t seed) {
  const int d = params.d();
  std::vector<CorpusFunction> corpus;

  CorpusFunction indicator;
  indicator.name = "indicator";
  indicator.eval = [](const Point& x) { return x.norm2() <= 1.0 ? 1.0 : 0.0; };
  indicator.support_radius = 1.0;
  indicator.profile = RadialProfile([](double) { return 1.0; }, 1.0);
  indicator.transform = [params](const Point& lambda) { return ball_indicator_transform(params, 1.0, lambda); };
  corpus.push_back(std::move(indicator));

  corpus.push_back(gaussian_member(params, corpus_gaussian_sigma(extent)));

  CorpusFunction bump;
  bump.name = "bump";
  const RadialProfile raw([](double r) { return bump_profile(r); }, 1.0);
  const double amplitude = 1.0 / radial_integrate(params, raw);
  bump.eval = [amplitude](const Point& x) { return amplitude * bump_profile(x.norm()); };
  bump.support_radius = 1.0;
  bump.profile = RadialProfile([amplitude](double r) { return amplitude * bump_profile(r); }, 1.0);
  corpus.push_back(std::move(bump));

  const double scale = std::min(1.0, extent / 4.0);
  std::mt19937_64 engine(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit_uniform(engine()); };
  std::vector<EvenBump> random_bumps;
  for (int k = 0; k < 5; ++k) {
    Point c(d);
    for (int i = 0; i + 1 < d; ++i) c[i] = scale * uniform(-1.0, 1.0);
    c.last() = scale * uniform(0.0, 1.0);
    const double radius = scale * uniform(0.25, 0.5);
    random_bumps.push_back({c, radius, uniform(0.5, 1.0)});
  }
  CorpusFunction superposition;
  superposition.name = "random_bumps";
  superposition.eval = [random_bumps](const Point& x) { return bump_sum(random_bumps, x); };
  superposition.support_radius = reach(random_bumps);
  corpus.push_back(std::move(superposition));

  Point a(d);
  Point b(d);
  a[0] = -0.6 * scale;
  b[0] = 0.6 * scale;
  a.last() = 0.5 * scale;
  b.last() = 0.5 * scale;
  const std::vector<EvenBump> positive{{a, 0.5 * scale, 1.0}};
  const std::vector<EvenBump> negative{{b, 0.5 * scale, 1.0}};
  CorpusFunction signed_member;
  signed_member.name = "signed_bumps";
  signed_member.nonnegative = false;
  signed_member.eval = [positive, negative](const Point& x) { return bump_sum(positive, x) - bump_sum(negative, x); };
  signed_member.support_radius = std::max(reach(positive), reach(negative));
  corpus.push_back(std::move(signed_member));
  return corpus;
}

}  // namespace weinstein
