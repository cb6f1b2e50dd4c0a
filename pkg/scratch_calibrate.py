"""Calibration diagnostics: prints every acceptance-relevant statistic."""
import time

import numpy as np

from scrollread import (
    ADVANCED, ELEMENTARY, SubgroupFilter, aggregate_by_text, corpus_index,
    evaluate, filter_sessions, l1_correlates, measure_session, normalize,
    compute_text_features, speed_distribution, table1_rows, score_by_proficiency,
)
from scrollread.stats import proficiency_speed_correlation, pearson, bonferroni
from scrollread.interaction import MEASURE_NAMES
from scrollread.synthetic import generate_cohort

t0 = time.time()
cohort = generate_cohort()
print(f"--- generation: {time.time()-t0:.1f}s")

arts = corpus_index(cohort.articles)
engaged, reports = filter_sessions(cohort.sessions)
print(f"engaged sessions: {len(engaged)} (target 1036); engaged participants: {len(set(s.participant_id for s in engaged))} (518)")

wc = np.array([a.word_count for a in cohort.articles if a.level == ELEMENTARY])
wa = np.array([a.word_count for a in cohort.articles if a.level == ADVANCED])
print(f"word counts: elem mean {wc.mean():.0f} (599), adv {wa.mean():.0f} (915)")

t0 = time.time()
measures = {}
for s in engaged:
    m = measure_session(s)
    measures[s.key] = (m, normalize(m, arts[(s.article_id, s.level)].word_count))
print(f"--- measures: {time.time()-t0:.1f}s")

# Table-1 directions
print("\nmeasure            elem_mean    adv_mean   elem_sd      adv_sd     dir sd_ok")
by_level = {lv: [s for s in engaged if s.level == lv] for lv in (ELEMENTARY, ADVANCED)}
for name in MEASURE_NAMES:
    ve = np.array([getattr(measures[s.key][1], name) for s in by_level[ELEMENTARY]])
    va = np.array([getattr(measures[s.key][1], name) for s in by_level[ADVANCED]])
    if name == "read_time_s":
        direction = ve.mean() > va.mean()
    elif name == "n_regressions":
        direction = va.mean() > ve.mean()
    else:
        direction = abs(ve.mean()) > abs(va.mean())
    sd_ok = ve.std(ddof=1) > va.std(ddof=1)
    print(f"{name:18s} {ve.mean():+.3e} {va.mean():+.3e} {ve.std(ddof=1):.3e} {va.std(ddof=1):.3e} {str(direction):5s} {sd_ok}")

# raw read times & raw means
rt_e = np.array([measures[s.key][0].read_time_s for s in by_level[ELEMENTARY]])
rt_a = np.array([measures[s.key][0].read_time_s for s in by_level[ADVANCED]])
print(f"\nraw read time: elem {rt_e.mean():.0f}s (340), adv {rt_a.mean():.0f}s (210)")
rg_e = np.array([measures[s.key][0].n_regressions for s in by_level[ELEMENTARY]])
rg_a = np.array([measures[s.key][0].n_regressions for s in by_level[ADVANCED]])
print(f"raw regressions: elem {rg_e.mean():.2f} (3.4), adv {rg_a.mean():.2f} (6.6)")

# speed-score correlations per level
for lv in (ELEMENTARY, ADVANCED):
    subset = by_level[lv]
    v = np.array([measures[s.key][1].speed_avg for s in subset])
    sc = np.array([float(s.score) for s in subset])
    r, p = pearson(v, sc)
    print(f"r(speed_avg_norm, score | {lv}): {r:+.3f} p_adj={min(1, p*16):.2e} (target elem -0.35, adv -0.26)")

# text features
tf = {a.key: compute_text_features(a.body, cohort.lexicon) for a in cohort.articles}
fk_pairs = sum(
    1 for aid in set(a.article_id for a in cohort.articles)
    if tf[(aid, ADVANCED)].flesch_kincaid > tf[(aid, ELEMENTARY)].flesch_kincaid
)
print(f"\nFK adv>elem pairs: {fk_pairs}/30 (need >=24)")
aoa_tok = np.array([tf[a.key].mean_aoa_tokens for a in cohort.articles])
aoa_lem = np.array([tf[a.key].mean_aoa_lemmas for a in cohort.articles])
fk = np.array([tf[a.key].flesch_kincaid for a in cohort.articles])
print(f"corr(aoa_tok, aoa_lem) across texts: {np.corrcoef(aoa_tok, aoa_lem)[0,1]:.2f} (want ~0.6)")
print(f"corr(aoa_tok, fk): {np.corrcoef(aoa_tok, fk)[0,1]:.2f} (want small)")
print(f"aoa coverage: {np.mean([tf[a.key].aoa_token_coverage for a in cohort.articles]):.3f}")

# L1 analyses
t0 = time.time()
dists = speed_distribution(engaged, measures, cohort.participants, group_by="L1")
for g in ("English", "Tamil"):
    d = dists[g]
    print(f"{g}: speed mean {d.mean:.3f} median {d.median:.3f} n={d.n}")
print("(targets: English 0.50/0.47, Tamil 0.46/0.37, tol 0.05)")
eng_scores = [s.score for s in engaged if cohort.participants[s.participant_id].first_language == "English"]
tam_scores = [s.score for s in engaged if cohort.participants[s.participant_id].first_language == "Tamil"]
print(f"mean score: English {np.mean(eng_scores):.2f} (1.18) Tamil {np.mean(tam_scores):.2f} (0.98)")

for lang in ("English", "Tamil"):
    res = l1_correlates(engaged, measures, cohort.participants, tf, lang)
    sig = [c for c in res if c.p_adjusted < 0.01]
    print(f"{lang} significant: {[(c.measure, round(c.r,3)) for c in sig]}")
    print(f"   top5: {[(c.measure, round(c.r,3)) for c in res[:5]]}")

r, p = proficiency_speed_correlation(engaged, measures, cohort.participants)
print(f"prof-speed corr: {r:+.3f} p={p:.1e} (want positive significant)")
print("score by prof:", [(b, round(m,2), n) for b, m, n in score_by_proficiency(engaged, cohort.participants)])
print(f"--- L1 block: {time.time()-t0:.1f}s")

# classifier
t0 = time.time()
rows = aggregate_by_text(engaged, measures, cohort.participants, text_features=tf)
subgroup = SubgroupFilter(age_bands=frozenset({"25-34"}))
rows_sub = aggregate_by_text(engaged, measures, cohort.participants, subgroup, text_features=tf)
print(f"rows: {len(rows)} (60), subgroup rows: {len(rows_sub)}")
seeds = [101, 102, 103, 104, 105]
for sel in ("scroll_all", "scroll_raw", "scroll_norm", "baseline", "baseline_traditional", "baseline_scroll"):
    fs = [evaluate(rows, sel, k=10, C=1.0, seed=sd).f1 for sd in seeds]
    print(f"{sel:20s} f={np.mean(fs):.3f} (per-seed {[round(f,2) for f in fs]})")
fs_sub = [evaluate(rows_sub, "scroll_all", k=10, C=1.0, seed=sd).f1 for sd in seeds]
print(f"subgroup scroll_all    f={np.mean(fs_sub):.3f} (must beat unfiltered scroll_all)")
print(f"--- classifier block: {time.time()-t0:.1f}s")
