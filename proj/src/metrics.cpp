#include "pagestream/metrics.hpp"

#include <ostream>

#include "pagestream/errors.hpp"

namespace pagestream {

void write_status_histogram_csv(std::ostream& out, const MetricsReport& report) {
  bool any = false;
  for (const PassStats& p : report.per_pass)
    if (p.has_status_counts) any = true;
  if (!any)
    throw DataError("no status histograms recorded; run with the weak predictor");

  out << "pass,s0,s1,s2,s3,s4,s5,attempted,skipped,real\n";
  std::uint32_t row = 0;
  for (const PassStats& p : report.per_pass) {
    if (!p.has_status_counts) continue;
    const auto& s = p.status_counts;
    const std::uint64_t attempted = s[0] + s[1] + s[5];
    const std::uint64_t skipped = s[2] + s[3] + s[4];
    out << row++ << ',' << s[0] << ',' << s[1] << ',' << s[2] << ',' << s[3] << ',' << s[4]
        << ',' << s[5] << ',' << attempted << ',' << skipped << ',' << p.changed_vertices
        << '\n';
  }
}

}  // namespace pagestream
