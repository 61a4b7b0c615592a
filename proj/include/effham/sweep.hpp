#pragma once

#include <functional>
#include <string>
#include <vector>

namespace effham {

// Runs f(i) for i in [0, n) over a small thread pool.  Thread count comes
// from EFFHAM_THREADS (default: hardware concurrency); results must be
// written to per-index slots so assembly stays deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

// Evenly spaced grid including both endpoints (steps >= 2), or just {start}.
std::vector<double> linspace(double start, double stop, int steps);

// CSV with shortest round-trip numeric formatting; NaN cells print "NaN".
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::size_t columns_;
};

std::string format_shortest(double v);

}  // namespace effham
