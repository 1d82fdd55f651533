#include "kdvlab/error.hpp"

namespace kdvlab {

void throw_precondition(const std::string& what) { throw PreconditionError(what); }

}  // namespace kdvlab
