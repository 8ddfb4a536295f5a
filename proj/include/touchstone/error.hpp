#pragma once

#include <stdexcept>
#include <string>

namespace touchstone {

// One library-wide error vocabulary; each operation documents which
// codes it can raise.
enum class Errc {
  // trace persistence
  missing_file,
  malformed_action,
  gap_in_steps,
  io_failure,
  // view hierarchy
  xml_syntax,
  bad_bounds,
  empty_hierarchy,
  node_not_in_tree,
  bad_xpath_syntax,
  // annotation DSL
  syntax_error,
  unknown_keyword,
  duplicate_keystate,
  non_monotone_steps,
  // similarity backend
  external_service_unavailable,
  // matcher
  missing_packages_snapshot,
  // metrics
  empty_input,
  missing_label,
  // simulated environment
  pack_syntax,
  dangling_screen,
  ambiguous_transition,
  session_terminated,
  coordinates_out_of_range,
  // operator workflows
  dataset_trace_mismatch,
  config_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace touchstone
