//! Statistics over the articles matching a query. Every count is a number
//! of distinct articles (pmids).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::index::Index;
use super::query::{AgeGroup, QuerySpec};
use crate::normalize::{Gender, TermKind};

pub const DEFAULT_TOP_N: usize = 50;
pub const BREAKDOWN_TOP_N: usize = 10;
pub const TIER_COUNT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermCount {
    pub term: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedTerm {
    pub term: String,
    pub count: usize,
    /// Share of this term among all co-occurrence counts of the query.
    pub proportion: f64,
    /// 1-based page when the top-n list is cut into five pages.
    pub rarity_tier: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "facet", content = "value")]
pub enum Facet {
    AgeGroup(AgeGroup),
    Gender(Gender),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCell {
    pub count: usize,
    pub top: Vec<TermCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsBundle {
    pub total: usize,
    pub yearly: BTreeMap<i32, usize>,
    pub top_terms: Vec<RankedTerm>,
    pub demographics: BTreeMap<(AgeGroup, Gender), usize>,
}

/// One matched article with the opposite-kind terms of its matched records.
/// Demographics come from the article's first matching record.
struct ArticleView<'a> {
    year: i32,
    age_group: AgeGroup,
    gender: Gender,
    terms: BTreeSet<&'a str>,
}

/// Rarity tier for 0-based `rank` in a list cut at `n`.
pub fn rarity_tier(rank: usize, n: usize) -> usize {
    let page = n.div_ceil(TIER_COUNT).max(1);
    (rank / page + 1).min(TIER_COUNT)
}

fn rank_counts(counts: BTreeMap<&str, usize>) -> Vec<(&str, usize)> {
    let mut ranked: Vec<(&str, usize)> = counts.into_iter().collect();
    // BTreeMap order makes the stable sort break ties alphabetically.
    ranked.sort_by_key(|t| std::cmp::Reverse(t.1));
    ranked
}

fn count_terms<'a, 'b>(articles: impl Iterator<Item = &'b ArticleView<'a>>) -> BTreeMap<&'a str, usize>
where
    'a: 'b,
{
    let mut counts = BTreeMap::new();
    for a in articles {
        for t in &a.terms {
            *counts.entry(*t).or_insert(0) += 1;
        }
    }
    counts
}

fn top_k<'a, 'b>(articles: impl Iterator<Item = &'b ArticleView<'a>>, k: usize) -> Vec<TermCount>
where
    'a: 'b,
{
    rank_counts(count_terms(articles))
        .into_iter()
        .take(k)
        .map(|(term, count)| TermCount { term: term.to_string(), count })
        .collect()
}

impl Index {
    fn articles(&self, q: &QuerySpec) -> Vec<ArticleView<'_>> {
        let mut by_pmid: BTreeMap<&str, ArticleView<'_>> = BTreeMap::new();
        for id in self.matching_records(q) {
            let r = self.record(id);
            let view = by_pmid.entry(r.pmid.as_str()).or_insert_with(|| ArticleView {
                year: r.year,
                age_group: AgeGroup::of(&r.age),
                gender: r.gender,
                terms: BTreeSet::new(),
            });
            match q.kind {
                TermKind::Drug => view.terms.extend(r.effects.iter().map(String::as_str)),
                TermKind::Effect => {
                    view.terms.insert(r.drug.as_str());
                }
            }
        }
        by_pmid.into_values().collect()
    }

    pub fn yearly_counts(&self, q: &QuerySpec) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for a in self.articles(q) {
            *out.entry(a.year).or_insert(0) += 1;
        }
        out
    }

    /// Opposite-kind terms ranked by article count (descending, then
    /// alphabetical), cut at `n`.
    pub fn top_cooccurring(&self, q: &QuerySpec, n: usize) -> Vec<RankedTerm> {
        let articles = self.articles(q);
        let ranked = rank_counts(count_terms(articles.iter()));
        let total: usize = ranked.iter().map(|(_, c)| c).sum();
        ranked
            .into_iter()
            .take(n)
            .enumerate()
            .map(|(rank, (term, count))| RankedTerm {
                term: term.to_string(),
                count,
                proportion: count as f64 / total as f64,
                rarity_tier: rarity_tier(rank, n),
            })
            .collect()
    }

    pub fn demographic_distribution(&self, q: &QuerySpec) -> BTreeMap<(AgeGroup, Gender), usize> {
        let mut out = BTreeMap::new();
        for a in self.articles(q) {
            *out.entry((a.age_group, a.gender)).or_insert(0) += 1;
        }
        out
    }

    /// Top ten co-occurring terms among matched articles in one group.
    pub fn group_breakdown(&self, q: &QuerySpec, facet: Facet) -> Vec<TermCount> {
        let articles = self.articles(q);
        top_k(
            articles.iter().filter(|a| match facet {
                Facet::AgeGroup(g) => a.age_group == g,
                Facet::Gender(g) => a.gender == g,
            }),
            BREAKDOWN_TOP_N,
        )
    }

    /// Top-k co-occurring terms per non-empty (age group, gender) cell.
    pub fn cross_breakdown(&self, q: &QuerySpec, k: usize) -> BTreeMap<(AgeGroup, Gender), CrossCell> {
        let articles = self.articles(q);
        let mut cells: BTreeMap<(AgeGroup, Gender), Vec<&ArticleView<'_>>> = BTreeMap::new();
        for a in &articles {
            cells.entry((a.age_group, a.gender)).or_default().push(a);
        }
        cells
            .into_iter()
            .map(|(key, members)| (key, CrossCell { count: members.len(), top: top_k(members.into_iter(), k) }))
            .collect()
    }

    pub fn stats(&self, q: &QuerySpec, n: usize) -> StatsBundle {
        let yearly = self.yearly_counts(q);
        StatsBundle {
            total: yearly.values().sum(),
            yearly,
            top_terms: self.top_cooccurring(q, n),
            demographics: self.demographic_distribution(q),
        }
    }
}
