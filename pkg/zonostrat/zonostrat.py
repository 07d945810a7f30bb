#!/usr/bin/env python

"""
zonostrat
~~~~~~~~~

Main class for zonostrat package.

"""

import json
import logging
import os
import pathlib
import shutil
import sys
from dataclasses import dataclass, field
from importlib import metadata
from logging.handlers import TimedRotatingFileHandler
from typing import List, Optional, Tuple

from dacite import from_dict

from zonostrat.algebra.linalg import IntMatrix, matrix_rows
from zonostrat.errors import InstanceFileError, UnsupportedDimension, ZonostratError
from zonostrat.geometry.strata import (
    CorrespondenceReport,
    Stratum,
    brute_force_strata,
    enumerate_strata,
    verify_main_theorem,
    verify_restriction,
)
from zonostrat.geometry.toric import (
    bondal_thomsen,
    class_group,
    effective_cone,
    minimal_eff_face,
    verify_corollary,
)
from zonostrat.geometry.zonotope import (
    Instance,
    build_instance,
    change_of_basis,
    closed_lattice_points,
    face_dimension,
    interior_lattice_points,
    stanley_count,
    to_basis,
)
from zonostrat.picture.picture_base import RenderConfiguration
from zonostrat.picture.picture_factory import PictureFactory
from zonostrat.reader.reader_base import InstanceFile
from zonostrat.reader.reader_factory import InstanceReaderFactory
from zonostrat.report import (
    CheckRow,
    ConeSummary,
    InstanceSummary,
    OracleRow,
    Report,
    RestrictionSection,
    StratumRow,
    ThetaRow,
    int_lists,
    one_based,
    rational_strings,
)


@dataclass
class GeneralConfiguration:
    """Class describing general parameters of zonostrat configuration."""

    logs_folder_path: str = ""
    """The directory path in which logs will be stored. Can be both relative or absolute. Empty disables file logging."""

    log_level: str = "WARNING"
    """The name of the root log level."""

    workers: int = 1
    """The number of threads used for enumeration. Results never depend on it."""


@dataclass
class ZonostratConfiguration:
    """Class describing all nested parameters of zonostrat configuration."""

    general: GeneralConfiguration = field(default_factory=GeneralConfiguration)
    render: RenderConfiguration = field(default_factory=RenderConfiguration)


class Zonostrat:
    """
    Main class driving the analysis, rendering and verification commands.
    """

    def __init__(
        self,
        configuration_filepath: str = "",
        workers: Optional[int] = None,
        log_level: Optional[str] = None,
    ):
        self.__configuration: ZonostratConfiguration = (
            self.__parse_configuration_json_file(configuration_filepath)
        )

        if workers is not None:
            self.__configuration.general.workers = workers
        if log_level is not None:
            self.__configuration.general.log_level = log_level

        if self.__configuration.general.workers < 1:
            raise ValueError("At least one worker is required!")

        self.__initialize_logging()

        try:
            version = metadata.version("zonostrat")
            logging.debug("zonostrat v%s was started.", version)
        except metadata.PackageNotFoundError:
            logging.debug("zonostrat was started.")

    @staticmethod
    def __parse_configuration_json_file(filepath: str) -> ZonostratConfiguration:
        if not filepath:
            return ZonostratConfiguration()

        with open(filepath, "r", encoding="utf-8") as json_file:
            configuration_json = json.load(json_file)

        configuration = from_dict(
            data_class=ZonostratConfiguration,
            data=configuration_json,
        )

        return configuration

    def __initialize_logging(self) -> None:
        level = logging.getLevelName(self.__configuration.general.log_level.upper())
        if not isinstance(level, int):
            raise ValueError("Unknown log level provided!")

        handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]

        if self.__configuration.general.logs_folder_path:
            log_directory = os.path.abspath(self.__configuration.general.logs_folder_path)
            pathlib.Path(log_directory).mkdir(parents=True, exist_ok=True)

            filepath = os.path.join(log_directory, "zonostrat.log")
            handler = TimedRotatingFileHandler(filepath, when="midnight", backupCount=60)
            handler.suffix = "%Y%m%d"
            handlers.append(handler)

        logging.basicConfig(
            level=level,
            format="%(asctime)s:%(levelname)s:%(funcName)s(): %(message)s",
            handlers=handlers,
        )
        logging.getLogger().setLevel(level)

        logging.getLogger("matplotlib").setLevel(logging.WARNING)
        logging.getLogger("PIL").setLevel(logging.WARNING)

    @property
    def configuration(self) -> ZonostratConfiguration:
        """The effective configuration after command-line overrides."""
        return self.__configuration

    @property
    def __workers(self) -> int:
        return self.__configuration.general.workers

    def load(self, filepath: str, plain: bool = False) -> Tuple[Instance, InstanceFile]:
        """
        Reads an instance file and builds its instance.

        Parameters:
            `filepath` (str): path to the instance file
            `plain` (bool): the file has one vector per line instead of JSON

        Returns:
            tuple: built instance and file content
        """
        reader = InstanceReaderFactory.create("plain" if plain else "json", filepath)
        instance_file = reader.read()

        name = instance_file.name or os.path.splitext(os.path.basename(filepath))[0]
        instance = build_instance(instance_file.vectors, name)

        if instance_file.paper_pi is not None:
            change_of_basis(instance, instance_file.paper_pi)

        logging.info(
            "Loaded instance '%s' with k=%d, n=%d, r=%d.",
            instance.name,
            instance.k,
            instance.n,
            instance.rank,
        )

        return instance, instance_file

    @staticmethod
    def __paper_transform(
        instance: Instance, instance_file: InstanceFile, required: bool
    ) -> Optional[IntMatrix]:
        if instance_file.paper_pi is None:
            if required:
                raise InstanceFileError(
                    "A paper_pi matrix is required for --paper-pi!", field="paper_pi"
                )
            return None

        return change_of_basis(instance, instance_file.paper_pi)

    @staticmethod
    def __summary(instance: Instance, instance_file: InstanceFile) -> InstanceSummary:
        return InstanceSummary(
            name=instance.name,
            k=instance.k,
            n=instance.n,
            r=instance.rank,
            torsion=list(class_group(instance).torsion),
            cokernel=int_lists(instance.cokernel_rows),
            paper_pi=instance_file.paper_pi,
            preimage_integral=instance.preimage_lattice.is_integral,
        )

    @staticmethod
    def __stratum_rows(
        instance: Instance, strata: List[Stratum], transform: Optional[IntMatrix]
    ) -> List[StratumRow]:
        return [
            StratumRow(
                index=index,
                label=list(stratum.label),
                j_set=one_based(stratum.j_set),
                dim_lift=stratum.dim_lift,
                quotient_dim=stratum.quotient_dim,
                witness=rational_strings(stratum.witness),
                point=list(stratum.point.p),
                paper_point=None if transform is None else list(to_basis(transform, stratum.point.p)),
                face_dim=face_dimension(instance, stratum.j_set),
            )
            for index, stratum in enumerate(strata)
        ]

    @staticmethod
    def __correspondence_checks(correspondence: CorrespondenceReport) -> List[CheckRow]:
        records = correspondence.records
        return [
            CheckRow(
                name="bijection",
                passed=correspondence.counts_match and correspondence.labels_distinct,
                detail=f"{len(records)} strata, {correspondence.point_count} lattice points",
            ),
            CheckRow(
                name="dimension_identity",
                passed=all(correspondence.identity_checks),
            ),
            CheckRow(
                name="kernel_containment",
                passed=all(record.kernel_contained for record in records),
            ),
            CheckRow(
                name="zero_sets_agree",
                passed=all(record.j_sets_agree for record in records),
            ),
            CheckRow(
                name="witnesses",
                passed=all(record.witness_valid for record in records),
            ),
            CheckRow(
                name="inclusion_reversal",
                passed=all(check.passed for check in correspondence.inclusion_checks),
                detail=f"{len(correspondence.inclusion_checks)} nested pairs",
            ),
        ]

    def __toric_section(self, instance: Instance, strata: List[Stratum], report: Report) -> None:
        elements = bondal_thomsen(instance, strata)
        index_of = {stratum.point.p: index for index, stratum in enumerate(strata)}
        report.theta = [
            ThetaRow(
                free_part=list(element.free_part),
                torsion_part=list(element.torsion_part),
                stratum=index_of[element.stratum.point.p],
                face_dim=minimal_eff_face(instance, element.stratum.point.p).dim,
            )
            for element in elements
        ]

        cone = effective_cone(instance)
        report.cone = ConeSummary(
            rays=int_lists(cone.rays),
            pointed=cone.pointed,
            dim=cone.dim,
            zero=one_based(cone.zero),
            duplicates=one_based(cone.duplicates),
            non_extremal=one_based(cone.non_extremal),
        )

        if instance.rank != instance.n:
            logging.info("Instance is rank-deficient, toric dimension formula skipped.")
            return

        corollary = verify_corollary(instance, strata, self.__workers, strict=False)
        report.checks.append(
            CheckRow(
                name="toric_dimensions",
                passed=corollary.count_matches
                and all(record.passed for record in corollary.records),
                detail=f"{corollary.theta_count} Θ elements, torsion order {corollary.torsion_order}",
            )
        )
        report.checks.append(
            CheckRow(
                name="theta_grouping",
                passed=all(grouping.passed for grouping in corollary.groupings),
                detail=f"{len(corollary.groupings)} faces",
            )
        )

    def analyze(self, filepath: str, plain: bool = False, paper_pi: bool = False) -> Report:
        """
        Enumerates strata and verifies the correspondence, restrictions and toric formula.

        Parameters:
            `filepath` (str): path to the instance file
            `plain` (bool): the file has one vector per line instead of JSON
            `paper_pi` (bool): add lattice point coordinates in the explicit π basis

        Returns:
            Report: report with strata, Θ and checks
        """
        instance, instance_file = self.load(filepath, plain)
        transform = self.__paper_transform(instance, instance_file, paper_pi) if paper_pi else None

        strata = enumerate_strata(instance, self.__workers)
        correspondence = verify_main_theorem(instance, strata, self.__workers, strict=False)

        report = Report(command="analyze", instance=self.__summary(instance, instance_file))
        report.strata = self.__stratum_rows(instance, strata, transform)
        report.summary = [
            [dim_lift, face_dim, count]
            for (dim_lift, face_dim), count in correspondence.summary.items()
        ]
        report.checks = self.__correspondence_checks(correspondence)

        restrictions = [
            verify_restriction(instance, stratum, strata, strict=False) for stratum in strata
        ]
        report.checks.append(
            CheckRow(
                name="restrictions",
                passed=all(restriction.passed for restriction in restrictions),
                detail=f"{len(restrictions)} faces",
            )
        )

        self.__toric_section(instance, strata, report)

        if not report.passed:
            logging.error("Instance '%s' failed verification.", instance.name)

        return report

    def theta(self, filepath: str, plain: bool = False) -> Report:
        """
        Computes the class group, the Bondal-Thomsen collection and the effective cone.

        Returns:
            Report: report with Θ, cone and toric checks
        """
        instance, instance_file = self.load(filepath, plain)
        strata = enumerate_strata(instance, self.__workers)

        report = Report(command="theta", instance=self.__summary(instance, instance_file))
        report.strata = self.__stratum_rows(instance, strata, None)
        self.__toric_section(instance, strata, report)

        return report

    def oracle(self, filepath: str, strata_oracle: bool = False, plain: bool = False) -> Report:
        """
        Compares enumerations with independent oracles.

        Parameters:
            `filepath` (str): path to the instance file
            `strata_oracle` (bool): also compare with brute-force strata, full rank only
            `plain` (bool): the file has one vector per line instead of JSON

        Returns:
            Report: report with oracle comparisons
        """
        instance, instance_file = self.load(filepath, plain)
        strata = enumerate_strata(instance, self.__workers)

        report = Report(command="oracle", instance=self.__summary(instance, instance_file))

        expected = stanley_count(instance)
        found = len(closed_lattice_points(instance, self.__workers))
        report.oracles.append(
            OracleRow(name="stanley_count", expected=expected, found=found, passed=expected == found)
        )

        interior = {point.p for point in interior_lattice_points(instance, self.__workers)}
        open_strata = {stratum.point.p for stratum in strata if not stratum.j_set}
        report.oracles.append(
            OracleRow(
                name="interior_points",
                expected=len(interior),
                found=len(open_strata),
                passed=interior == open_strata,
            )
        )

        correspondence = verify_main_theorem(instance, strata, self.__workers, strict=False)
        agreeing = sum(1 for record in correspondence.records if record.j_sets_agree)
        report.oracles.append(
            OracleRow(
                name="zero_sets",
                expected=len(strata),
                found=agreeing,
                passed=agreeing == len(strata),
            )
        )

        if strata_oracle:
            labels = {stratum.label for stratum in strata}
            brute = brute_force_strata(instance)
            report.oracles.append(
                OracleRow(
                    name="brute_force_strata",
                    expected=len(labels),
                    found=len(brute),
                    passed=set(brute) == labels,
                )
            )

        for row in report.oracles:
            logging.info("Oracle %s: expected %d, found %d.", row.name, row.expected, row.found)

        return report

    def restrict(self, filepath: str, stratum_index: int, plain: bool = False) -> Report:
        """
        Restricts an instance to the face of one stratum.

        Parameters:
            `filepath` (str): path to the instance file
            `stratum_index` (int): 0-based index of the stratum in sorted order
            `plain` (bool): the file has one vector per line instead of JSON

        Returns:
            Report: report with the restriction and its checks
        """
        instance, instance_file = self.load(filepath, plain)
        strata = enumerate_strata(instance, self.__workers)

        if not 0 <= stratum_index < len(strata):
            raise ZonostratError(
                f"Stratum index must be between 0 and {len(strata) - 1}!"
            )

        stratum = strata[stratum_index]
        restriction = verify_restriction(instance, stratum, strata, strict=False)
        data = restriction.data

        report = Report(command="restrict", instance=self.__summary(instance, instance_file))
        report.strata = self.__stratum_rows(instance, [stratum], None)
        report.strata[0].index = stratum_index
        report.restriction = RestrictionSection(
            stratum=stratum_index,
            kept=one_based(data.kept),
            w_basis=matrix_rows(data.w_basis),
            sub_vectors=int_lists(data.sub.vectors),
            embedding=matrix_rows(data.embedding),
            sub_points=[rational_strings(y) for y in restriction.sub_points],
            face_points=int_lists(restriction.face_points),
        )
        report.checks = [
            CheckRow(name="injective", passed=restriction.injective),
            CheckRow(
                name="image_is_face",
                passed=restriction.image_matches,
                detail=f"{len(restriction.images)} images, {len(restriction.face_points)} face points",
            ),
            CheckRow(name="codimension_zero", passed=restriction.codimension_zero),
        ]
        if restriction.lift_dimension_matches is not None:
            report.checks.append(
                CheckRow(name="lift_dimension", passed=restriction.lift_dimension_matches)
            )

        return report

    def render(self, filepath: str, directory: str, plain: bool = False) -> List[str]:
        """
        Writes the arrangement and zonotope pictures of an instance as SVG files.

        Pictures not drawable in the dimensions of the instance are skipped with
        a warning. Zonotope coordinates follow the explicit π when one is given.

        Returns:
            list: paths of written files
        """
        instance, instance_file = self.load(filepath, plain)
        transform = self.__paper_transform(instance, instance_file, False)
        strata = enumerate_strata(instance, self.__workers)

        pathlib.Path(directory).mkdir(parents=True, exist_ok=True)

        written: List[str] = []
        for picture in PictureFactory.create_all(
            configuration=self.__configuration.render,
            instance=instance,
            strata=strata,
            transform=transform,
        ):
            picture_path = os.path.join(directory, f"{instance.name}_{picture.name()}.svg")
            try:
                picture.render(picture_path)
            except UnsupportedDimension as exception:
                logging.warning("Picture '%s' was skipped: %s", picture.name(), exception)
                continue

            written.append(picture_path)

        return written

    @staticmethod
    def initialize_folder() -> None:
        """
        Copies the default configuration and the example instances into current working directory.
        """
        current_script_folder = os.path.dirname(os.path.realpath(__file__))
        current_working_folder = os.getcwd()
        shutil.copytree(
            os.path.join(current_script_folder, "templates", "common"),
            current_working_folder,
            dirs_exist_ok=True,
        )
