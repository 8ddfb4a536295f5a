#include "touchstone/error.hpp"

namespace touchstone {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::missing_file: return "MissingFile";
    case Errc::malformed_action: return "MalformedAction";
    case Errc::gap_in_steps: return "GapInSteps";
    case Errc::io_failure: return "IoFailure";
    case Errc::xml_syntax: return "XmlSyntax";
    case Errc::bad_bounds: return "BadBounds";
    case Errc::empty_hierarchy: return "EmptyHierarchy";
    case Errc::node_not_in_tree: return "NodeNotInTree";
    case Errc::bad_xpath_syntax: return "BadXPathSyntax";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_keyword: return "UnknownKeyword";
    case Errc::duplicate_keystate: return "DuplicateKeyState";
    case Errc::non_monotone_steps: return "NonMonotoneSteps";
    case Errc::external_service_unavailable: return "ExternalServiceUnavailable";
    case Errc::missing_packages_snapshot: return "MissingPackagesSnapshot";
    case Errc::empty_input: return "EmptyInput";
    case Errc::missing_label: return "MissingLabel";
    case Errc::pack_syntax: return "PackSyntax";
    case Errc::dangling_screen: return "DanglingScreen";
    case Errc::ambiguous_transition: return "AmbiguousTransition";
    case Errc::session_terminated: return "SessionTerminated";
    case Errc::coordinates_out_of_range: return "CoordinatesOutOfRange";
    case Errc::dataset_trace_mismatch: return "DatasetTraceMismatch";
    case Errc::config_error: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace touchstone
