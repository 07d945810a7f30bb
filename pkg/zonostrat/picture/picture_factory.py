#!/usr/bin/env python

"""
zonostrat.picture.picture_factory
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Components for creation of pictures.

"""

from typing import List, Optional

from zonostrat.algebra.linalg import IntMatrix
from zonostrat.geometry.strata import Stratum
from zonostrat.geometry.zonotope import Instance
from zonostrat.picture.arrangement_picture import ArrangementPicture
from zonostrat.picture.picture_base import PictureBase, RenderConfiguration
from zonostrat.picture.zonotope_picture import ZonotopePicture


class PictureFactory:
    """
    A factory class for creating pictures.
    """

    __supported_pictures = {
        "arrangement": ArrangementPicture,
        "zonotope": ZonotopePicture,
    }

    @staticmethod
    def names() -> List[str]:
        """Returns the names of all supported pictures in drawing order."""
        return list(PictureFactory.__supported_pictures)

    @staticmethod
    def create(
        picture_type: str,
        configuration: RenderConfiguration,
        instance: Instance,
        strata: List[Stratum],
        transform: Optional[IntMatrix] = None,
    ) -> PictureBase:
        """
        Creates single picture of an instance.

        Parameters:
            `picture_type` (str): picture name. Allowed values: `arrangement`, `zonotope`.
            `configuration` (RenderConfiguration): render parameters
            `instance` (Instance): instance to draw
            `strata` (list): strata of the instance
            `transform` (IntMatrix): optional change of basis for zonotope coordinates

        Returns:
            PictureBase: created picture
        """
        if picture_type not in PictureFactory.__supported_pictures:
            if not picture_type:
                raise ValueError("Empty picture type provided!")

            raise ValueError("Unknown picture type provided!")

        return PictureFactory.__supported_pictures[picture_type](
            configuration=configuration,
            instance=instance,
            strata=strata,
            transform=transform,
        )

    @staticmethod
    def create_all(
        configuration: RenderConfiguration,
        instance: Instance,
        strata: List[Stratum],
        transform: Optional[IntMatrix] = None,
    ) -> List[PictureBase]:
        """
        Creates every supported picture of an instance.

        Returns:
            list: list of created pictures
        """
        pictures: List[PictureBase] = []

        for picture_type in PictureFactory.names():
            pictures.append(
                PictureFactory.create(
                    picture_type=picture_type,
                    configuration=configuration,
                    instance=instance,
                    strata=strata,
                    transform=transform,
                )
            )

        return pictures
