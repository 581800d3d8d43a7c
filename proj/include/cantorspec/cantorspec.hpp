#ifndef CANTORSPEC_CANTORSPEC_HPP
#define CANTORSPEC_CANTORSPEC_HPP

#include "cantorspec/amo.hpp"
#include "cantorspec/bounds.hpp"
#include "cantorspec/diophantine.hpp"
#include "cantorspec/errors.hpp"
#include "cantorspec/gap_lemma.hpp"
#include "cantorspec/ids.hpp"
#include "cantorspec/intervals.hpp"
#include "cantorspec/pipeline.hpp"
#include "cantorspec/sturm.hpp"

#endif
