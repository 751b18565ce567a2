#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperpos {

struct DemoRow {
  std::string quantity;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string source;  // "reference", "derived" or "identity"
  bool pass = false;
};

struct DemoResult {
  std::string id;
  std::vector<DemoRow> rows;
  std::vector<std::string> notes;
  bool pass() const;
};

const std::vector<std::string>& demo_ids();
DemoResult run_demo(const std::string& id);
void print_demo(const DemoResult& result, std::ostream& out);

}  // namespace hyperpos
