#pragma once

#include "increval/bleu.hpp"
#include "increval/corpus.hpp"
#include "increval/editops.hpp"
#include "increval/error.hpp"
#include "increval/metrics.hpp"
#include "increval/ngram.hpp"
#include "increval/protocol.hpp"
#include "increval/report.hpp"
#include "increval/scoring.hpp"
#include "increval/simulator.hpp"
#include "increval/streaming.hpp"
#include "increval/trace_io.hpp"
#include "increval/types.hpp"
