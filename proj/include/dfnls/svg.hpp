#pragma once

#include <string>
#include <vector>

namespace dfnls::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool line = true;
  bool markers = true;
};

struct Plot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool logx = true;
  bool logy = true;
  std::vector<Series> series;
  std::string comment;  // embedded as an XML comment (config echo)
};

std::string render(const Plot& plot);

}  // namespace dfnls::svg
