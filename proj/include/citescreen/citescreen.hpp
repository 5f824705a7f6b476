#ifndef CITESCREEN_CITESCREEN_HPP
#define CITESCREEN_CITESCREEN_HPP

#include "citescreen/author.hpp"
#include "citescreen/corpus.hpp"
#include "citescreen/error.hpp"
#include "citescreen/io.hpp"
#include "citescreen/metrics.hpp"
#include "citescreen/pipeline.hpp"
#include "citescreen/record.hpp"
#include "citescreen/report.hpp"
#include "citescreen/screen.hpp"
#include "citescreen/stats.hpp"
#include "citescreen/synth.hpp"

#endif // CITESCREEN_CITESCREEN_HPP
