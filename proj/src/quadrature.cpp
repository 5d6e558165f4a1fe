#include "cavshift/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cavshift/errors.hpp"

namespace cavshift {

namespace {

// Gauss-Kronrod 7-15 on [-1, 1] (QUADPACK coefficients).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b;
  double value;  // K15 of component 0
  double side;   // K15 of component 1
  double error;  // |K15 - G7| based estimate
};

Panel evaluate_panel(const std::function<std::array<double, 2>(double)>& f, double a,
                     double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15][2];
  for (int j = 0; j < 7; ++j) {
    const auto lo = f(center - half * kXgk[j]);
    const auto hi = f(center + half * kXgk[j]);
    fv[j][0] = lo[0];
    fv[j][1] = lo[1];
    fv[14 - j][0] = hi[0];
    fv[14 - j][1] = hi[1];
  }
  const auto mid = f(center);
  fv[7][0] = mid[0];
  fv[7][1] = mid[1];

  double k15 = 0.0, k15_side = 0.0, g7 = 0.0, k15_abs = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double pair0 = (j == 7) ? fv[7][0] : fv[j][0] + fv[14 - j][0];
    const double pair1 = (j == 7) ? fv[7][1] : fv[j][1] + fv[14 - j][1];
    k15 += kWgk[j] * pair0;
    k15_side += kWgk[j] * pair1;
    k15_abs += kWgk[j] * ((j == 7) ? std::abs(fv[7][0])
                                   : std::abs(fv[j][0]) + std::abs(fv[14 - j][0]));
  }
  for (int j = 0; j < 4; ++j) {
    const int idx = 2 * j + 1;
    g7 += kWg[j] * ((idx == 7) ? fv[7][0] : fv[idx][0] + fv[14 - idx][0]);
  }

  Panel p{a, b, half * k15, half * k15_side, 0.0};
  // QUADPACK-style rescaled error: sharp for smooth integrands, never
  // optimistic beyond |K15 - G7|^(3/2).
  const double raw = std::abs(half * (k15 - g7));
  const double scale = half * k15_abs;
  p.error = raw;
  if (scale > 0.0 && raw > 0.0) {
    const double r = std::pow(200.0 * raw / scale, 1.5);
    p.error = scale * std::min(1.0, r);
  }
  return p;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<std::array<double, 2>(double)>& f,
                                    double a, double b, const QuadratureSettings& settings) {
  if (!(b > a)) throw InvalidArgument("integration range must be non-empty");
  if (settings.initial_panels < 1 || settings.max_panels < settings.initial_panels)
    throw InvalidArgument("bad panel limits");

  std::vector<Panel> panels;
  panels.reserve(settings.max_panels);
  const double step = (b - a) / settings.initial_panels;
  for (int i = 0; i < settings.initial_panels; ++i) {
    const double lo = a + i * step;
    const double hi = (i + 1 == settings.initial_panels) ? b : a + (i + 1) * step;
    panels.push_back(evaluate_panel(f, lo, hi));
  }

  auto totals = [&panels]() {
    double v = 0.0, e = 0.0;
    for (const Panel& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair<double, double>(v, e);
  };

  while (static_cast<int>(panels.size()) < settings.max_panels) {
    const auto [value, error] = totals();
    if (error <= settings.rel_tol * std::abs(value) || error == 0.0) break;
    // Split the worst panel; ties broken by position for determinism.
    size_t worst = 0;
    for (size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error > panels[worst].error ||
          (panels[i].error == panels[worst].error && panels[i].a < panels[worst].a))
        worst = i;
    }
    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    panels[worst] = evaluate_panel(f, old.a, mid);
    panels.push_back(evaluate_panel(f, mid, old.b));
  }

  // Fixed-order reduction (by position) so the result is independent of
  // refinement bookkeeping.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadratureResult out;
  for (const Panel& p : panels) {
    out.value += p.value;
    out.side += p.side;
    out.abs_error += p.error;
  }
  out.panels = static_cast<int>(panels.size());
  out.converged = out.abs_error <= settings.rel_tol * std::abs(out.value) ||
                  out.abs_error == 0.0;
  return out;
}

}  // namespace cavshift
