#include "cvtele/experiments/sweep_output.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

namespace cvtele::experiments {

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "abscissa_db,fidelity\n";
  for (const auto& p : points) out += fmt::format("{:.9g},{:.9g}\n", p.abscissa_db, p.fidelity);
  return out;
}

std::string sweep_svg(const std::vector<SweepPoint>& points, SweepAxis axis, double fixed_db) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 420.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 40.0;
  constexpr double kBottom = 60.0;
  const double x_lo = points.empty() ? 0.0 : points.front().abscissa_db;
  const double x_hi = points.empty() ? 1.0 : std::max(points.back().abscissa_db, x_lo + 1e-9);
  const auto sx = [&](double v) { return kLeft + (v - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight); };
  // Fidelity axis fixed to [0, 1].
  const auto sy = [&](double f) { return kHeight - kBottom - f * (kHeight - kTop - kBottom); };

  const bool tau_axis = axis == SweepAxis::tau_db;
  const std::string x_label = tau_axis ? "coth(beta/2) [dB]" : "e^{+2r} [dB]";
  const std::string title = tau_axis ? fmt::format("classical-limit fidelity, e^{{+2r}} fixed at {:.2f} dB", fixed_db)
                                     : fmt::format("classical-limit fidelity, coth(beta/2) fixed at {:.2f} dB", fixed_db);

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  svg += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                     kWidth / 2, title);
  // Axes, ticks and labels.
  svg += fmt::format("<path d=\"M{0} {1} L{0} {2} L{3} {2}\" stroke=\"black\" fill=\"none\"/>\n", kLeft, kTop,
                     kHeight - kBottom, kWidth - kRight);
  for (int i = 0; i <= 5; ++i) {
    const double f = i / 5.0;
    svg += fmt::format(
        "<text x=\"{}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.1f}</text>\n",
        kLeft - 6, sy(f) + 4, f);
    const double a = x_lo + (x_hi - x_lo) * i / 5.0;
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{:.1f}</text>\n",
        sx(a), kHeight - kBottom + 16, a);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                     (kLeft + kWidth - kRight) / 2, kHeight - 18, x_label);
  svg += fmt::format(
      "<text x=\"18\" y=\"{0}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 18 {0})\">fidelity</text>\n",
      (kTop + kHeight - kBottom) / 2);

  std::string path;
  for (std::size_t i = 0; i < points.size(); ++i) {
    path += fmt::format("{}{:.3f} {:.3f} ", i == 0 ? "M" : "L", sx(points[i].abscissa_db), sy(points[i].fidelity));
  }
  svg += fmt::format("<path d=\"{}\" stroke=\"#1f5fa8\" stroke-width=\"2\" fill=\"none\"/>\n", path);

  const double marker = tau_axis ? kMeasuredTauDb : kMeasuredAntisqueezeDb;
  if (marker >= x_lo && marker <= x_hi) {
    const double cx = sx(marker);
    const double cy = sy(kMeasuredQuantumFidelity);
    svg += fmt::format(
        "<path d=\"M{:.3f} {:.3f} L{:.3f} {:.3f} M{:.3f} {:.3f} L{:.3f} {:.3f}\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n",
        cx - 6, cy - 6, cx + 6, cy + 6, cx - 6, cy + 6, cx + 6, cy - 6);
  }
  svg += "</svg>\n";
  return svg;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace cvtele::experiments
